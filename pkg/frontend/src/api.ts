// Typed client for the stance-classifier session API. All numbers are
// passed through verbatim; the UI never recomputes a posterior.

export interface SessionState {
  t: number;
  position: [number, number];
  observation: string;
  last_action: string;
  nll_dev: number;
  nll_agt: number;
  posterior_agt: number;
  posterior_dev: number;
  goal_posteriors: Record<string, number>;
}

export interface SessionDescriptor {
  id: string;
  rows: number;
  cols: number;
  cells: string[][];
  start: [number, number];
  goals: Record<string, [number, number]>;
  switching: boolean;
  state: SessionState;
}

export interface Report {
  nll_dev: number;
  nll_agt: number;
  posterior_dev: number;
  posterior_agt: number;
  steps: number;
  actions: string;
  goal_posteriors: Record<string, number>;
}

export interface CreateOptions {
  map?: string;
  switching?: boolean;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const res = await fetch(url, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  if (!res.ok) {
    let code = "http_error";
    let message = `${res.status}`;
    try {
      const body = (await res.json()) as { code?: string; message?: string };
      code = body.code ?? code;
      message = body.message ?? message;
    } catch {
      // non-JSON error body: keep the status text
    }
    throw new ApiError(res.status, code, message);
  }
  return (await res.json()) as T;
}

export class ApiClient {
  constructor(readonly base: string = "") {}

  createSession(opts: CreateOptions = {}): Promise<SessionDescriptor> {
    return request(`${this.base}/api/session`, {
      method: "POST",
      body: JSON.stringify(opts),
    });
  }

  step(id: string, action: string): Promise<SessionState> {
    return request(`${this.base}/api/session/${id}/step`, {
      method: "POST",
      body: JSON.stringify({ action }),
    });
  }

  undo(id: string): Promise<SessionState> {
    return request(`${this.base}/api/session/${id}/undo`, { method: "POST" });
  }

  reset(id: string): Promise<SessionState> {
    return request(`${this.base}/api/session/${id}/reset`, { method: "POST" });
  }

  report(id: string): Promise<Report> {
    return request(`${this.base}/api/session/${id}/report`);
  }

  deleteSession(id: string): Promise<unknown> {
    return request(`${this.base}/api/session/${id}`, { method: "DELETE" });
  }
}
