// Thin typed client over the session endpoints. The fetch implementation is
// injectable so tests can replay canned payloads.

import type { SessionPayload } from "./state";

export interface QueryRequest {
  pattern: string;
  pre?: string;
  post?: string;
  k_pattern?: number;
  k_context?: number;
  window?: number;
  min_support?: number;
  top_k?: number;
}

export type Verdict = "accept" | "reject";

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, detail: string) {
    super(detail);
    this.name = "ApiError";
    this.status = status;
  }
}

export class SnapClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl = "", fetchFn?: FetchLike) {
    this.baseUrl = baseUrl;
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ApiError(0, err instanceof Error ? err.message : "network error");
    }
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const detail =
        body && typeof body.detail === "string"
          ? body.detail
          : response.statusText || `HTTP ${response.status}`;
      throw new ApiError(response.status, detail);
    }
    return body as T;
  }

  createSession(request: QueryRequest): Promise<SessionPayload> {
    return this.request<SessionPayload>("/api/sessions", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(request),
    });
  }

  sendFeedback(sessionId: string, verdict: Verdict): Promise<SessionPayload> {
    return this.request<SessionPayload>(
      `/api/sessions/${encodeURIComponent(sessionId)}/feedback`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ verdict }),
      },
    );
  }

  getSession(sessionId: string): Promise<SessionPayload> {
    return this.request<SessionPayload>(`/api/sessions/${encodeURIComponent(sessionId)}`);
  }
}
