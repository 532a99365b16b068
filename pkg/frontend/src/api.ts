/**
 * Thin fetch client for the /v1 API.
 *
 * Every method resolves to the parsed JSON body or rejects with an ApiError
 * carrying the server's error code, message, and (for stack failures) the
 * index of the offending step.
 */

import type {
  ExplorerResult,
  SessionState,
  StackJson,
  UploadResponse,
} from "./types.js";

export interface UploadOptions {
  delimiter?: string;
  timeColumn?: string;
  timeFormat?: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly step?: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function raise(response: Response): Promise<never> {
  let code = "HttpError";
  let message = `${response.status} ${response.statusText}`;
  let step: number | undefined;
  try {
    const body = await response.json();
    const detail = body?.detail;
    if (detail && typeof detail === "object" && !Array.isArray(detail)) {
      code = typeof detail.error === "string" ? detail.error : code;
      message = typeof detail.message === "string" ? detail.message : message;
      step = typeof detail.step === "number" ? detail.step : undefined;
    } else if (detail !== undefined) {
      message = JSON.stringify(detail);
    }
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(response.status, code, message, step);
}

export class ExplorerClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      await raise(response);
    }
    return (await response.json()) as T;
  }

  /** POST the CSV body; returns the new session id and attribute report. */
  uploadTable(csv: string, options: UploadOptions = {}): Promise<UploadResponse> {
    const query = new URLSearchParams();
    if (options.delimiter !== undefined) query.set("delimiter", options.delimiter);
    if (options.timeColumn !== undefined) query.set("time_column", options.timeColumn);
    if (options.timeFormat !== undefined) query.set("time_format", options.timeFormat);
    const encoded = query.toString();
    const suffix = encoded === "" ? "" : `?${encoded}`;
    return this.request<UploadResponse>(`/v1/tables${suffix}`, {
      method: "POST",
      headers: { "content-type": "text/csv" },
      body: csv,
    });
  }

  /** Pick the case identifier and classifier; returns the recomputed result. */
  setChoices(
    sessionId: string,
    caseId: string,
    classifier: string[],
  ): Promise<ExplorerResult> {
    return this.request<ExplorerResult>(`/v1/sessions/${sessionId}/choices`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ case_id: caseId, classifier }),
    });
  }

  /**
   * Replace the filter stack.  With choices already made the server returns
   * the recomputed result; before that it acknowledges with {stack} only.
   */
  setStack(
    sessionId: string,
    stack: StackJson,
  ): Promise<ExplorerResult | { stack: StackJson }> {
    return this.request(`/v1/sessions/${sessionId}/stack`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(stack),
    });
  }

  result(sessionId: string): Promise<ExplorerResult> {
    return this.request<ExplorerResult>(`/v1/sessions/${sessionId}/result`);
  }

  session(sessionId: string): Promise<SessionState> {
    return this.request<SessionState>(`/v1/sessions/${sessionId}`);
  }
}
