// Wiring: one view state, one in-flight request at a time, session id kept
// in sessionStorage so a refresh can rebuild the view from GET /api/sessions.

import { ApiError, SnapClient } from "./api";
import { mountApp, updateApp, type Handlers } from "./render";
import {
  acceptIntoPane,
  canReject,
  dismissBanner,
  editPaneText,
  initialState,
  needsReplaceConfirm,
  restorePane,
  validatePattern,
  withBanner,
  withBusy,
  withPayload,
  type RecommendationPayload,
  type SessionPayload,
  type ViewState,
} from "./state";

const SESSION_KEY = "snap-session-id";

export interface AppHandle {
  getState(): ViewState;
  whenIdle(): Promise<void>;
}

export function bootApp(
  root: HTMLElement,
  client: SnapClient,
  storage: Pick<Storage, "getItem" | "setItem" | "removeItem">,
  confirmFn: (message: string) => boolean = (message) => window.confirm(message),
  copyFn: (text: string) => Promise<void> = (text) => navigator.clipboard.writeText(text),
): AppHandle {
  let state: ViewState = initialState;
  let inflight: Promise<void> = Promise.resolve();

  const handlers: Handlers = {
    onSubmit(pattern, pre, post) {
      const problem = validatePattern(pattern);
      if (problem !== null) {
        setState(withBanner(state, problem));
        return;
      }
      run(() =>
        client.createSession({
          pattern: pattern.trim(),
          pre: pre.trim() || undefined,
          post: post.trim() || undefined,
        }),
      );
    },
    onReject() {
      if (!canReject(state) || state.payload === null) {
        return;
      }
      run(() => client.sendFeedback(state.payload!.session_id, "reject"));
    },
    onAccept(rec: RecommendationPayload) {
      if (state.busy || state.payload === null) {
        return;
      }
      if (
        needsReplaceConfirm(state, rec) &&
        !confirmFn("Replace the edit pane with this skeleton?")
      ) {
        return;
      }
      run(
        () => client.sendFeedback(state.payload!.session_id, "accept"),
        (next) => acceptIntoPane(next, rec),
      );
    },
    onPaneInput(text) {
      setState(editPaneText(state, text));
    },
    onRestore() {
      setState(restorePane(state));
    },
    onCopy() {
      if (state.pane === null) {
        return;
      }
      const text = state.pane.text;
      inflight = inflight.then(() =>
        copyFn(text).catch(() => setState(withBanner(state, "clipboard unavailable"))),
      );
    },
    onDismissBanner() {
      setState(dismissBanner(state));
    },
  };

  const dom = mountApp(root, handlers);

  function setState(next: ViewState): void {
    state = next;
    updateApp(dom, state, handlers);
  }

  function run(
    action: () => Promise<SessionPayload>,
    after: (state: ViewState) => ViewState = (s) => s,
  ): void {
    if (state.busy) {
      return;
    }
    setState(withBusy(state, true));
    inflight = (async () => {
      try {
        const payload = await action();
        storage.setItem(SESSION_KEY, payload.session_id);
        setState(after(withPayload(withBusy(state, false), payload)));
      } catch (err) {
        const message =
          err instanceof ApiError
            ? err.status === 409
              ? "all repositories exhausted"
              : err.message
            : String(err);
        setState(withBanner(withBusy(state, false), message));
      }
    })();
  }

  const saved = storage.getItem(SESSION_KEY);
  if (saved) {
    setState(withBusy(state, true));
    inflight = (async () => {
      try {
        const payload = await client.getSession(saved);
        setState(withPayload(withBusy(state, false), payload));
      } catch {
        storage.removeItem(SESSION_KEY);
        setState(withBusy(state, false));
      }
    })();
  } else {
    setState(state);
  }

  return {
    getState: () => state,
    whenIdle: () => inflight,
  };
}

declare global {
  interface Window {
    snapApp?: AppHandle;
  }
}

if (typeof document !== "undefined") {
  const root = document.getElementById("app");
  if (root !== null) {
    window.snapApp = bootApp(root, new SnapClient(), window.sessionStorage);
  }
}
