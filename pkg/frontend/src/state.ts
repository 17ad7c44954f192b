// View state and pure transitions. Everything rendered is taken verbatim
// from the last service payload; the only client-owned state is the edit
// pane text, a banner message, and the single-request busy flag.

export interface RecommendationPayload {
  id: string;
  symbols: string[];
  support: number;
  score: number;
  skeleton: string;
  exemplar_ids: string[];
}

export interface TracePayload {
  raw: number;
  deduped: number;
  filtered: number;
  sequences: number;
  patterns: number;
  recommended: number;
  tier: string;
  warnings: string[];
}

export type SessionStatus = "active" | "closed" | "exhausted";

export interface SessionPayload {
  session_id: string;
  tier: string;
  status: SessionStatus;
  recommendations: RecommendationPayload[];
  trace: TracePayload;
}

export interface EditPane {
  sourceId: string;
  original: string;
  text: string;
}

export interface ViewState {
  payload: SessionPayload | null;
  banner: string | null;
  busy: boolean;
  pane: EditPane | null;
}

export const initialState: ViewState = {
  payload: null,
  banner: null,
  busy: false,
  pane: null,
};

export function validatePattern(pattern: string): string | null {
  return pattern.trim().length === 0 ? "Enter a query pattern first." : null;
}

export function withPayload(state: ViewState, payload: SessionPayload): ViewState {
  return { ...state, payload, banner: null };
}

export function withBanner(state: ViewState, banner: string): ViewState {
  return { ...state, banner };
}

export function dismissBanner(state: ViewState): ViewState {
  return { ...state, banner: null };
}

export function withBusy(state: ViewState, busy: boolean): ViewState {
  return { ...state, busy };
}

export function canSubmit(state: ViewState): boolean {
  return !state.busy;
}

export function canReject(state: ViewState): boolean {
  return !state.busy && state.payload !== null && state.payload.status === "active";
}

export function canAccept(state: ViewState): boolean {
  return !state.busy && state.payload !== null && state.payload.status !== "exhausted";
}

// Accepting a different recommendation overwrites pane edits; ask first.
export function needsReplaceConfirm(state: ViewState, rec: RecommendationPayload): boolean {
  return state.pane !== null && state.pane.sourceId !== rec.id;
}

export function acceptIntoPane(state: ViewState, rec: RecommendationPayload): ViewState {
  return {
    ...state,
    pane: { sourceId: rec.id, original: rec.skeleton, text: rec.skeleton },
  };
}

export function editPaneText(state: ViewState, text: string): ViewState {
  if (state.pane === null) {
    return state;
  }
  return { ...state, pane: { ...state.pane, text } };
}

export function restorePane(state: ViewState): ViewState {
  if (state.pane === null) {
    return state;
  }
  return { ...state, pane: { ...state.pane, text: state.pane.original } };
}

export function traceSegments(trace: TracePayload): Array<{ label: string; value: number }> {
  return [
    { label: "raw", value: trace.raw },
    { label: "deduped", value: trace.deduped },
    { label: "filtered", value: trace.filtered },
    { label: "patterns", value: trace.patterns },
    { label: "recommended", value: trace.recommended },
  ];
}
