// Typed client for the bwmllsm session API. All numbers shown in the UI
// come from these responses; the frontend never derives weights itself.

export interface WeightViews {
  y: number[];
  w_sum: number[];
  w_prod: number[];
}

export interface ViolationItem {
  i: number;
  j: number;
  value: string;
  tie: boolean;
}

export interface MiddleFlags {
  ge_best: boolean;
  tie_best: boolean;
  le_worst: boolean;
  tie_worst: boolean;
}

export interface ViolationReport {
  count: number;
  tie_count: number;
  exact: boolean;
  items: ViolationItem[];
  bwm?: Record<string, MiddleFlags>;
}

export interface TheoremVerdict {
  bound: string | number | null;
  pass: boolean;
  margin: number | null;
  reason?: string;
  bw_maximal?: boolean;
}

export interface Diagnosis {
  p: string;
  p_mode: string;
  max_entry: string;
  theorem1?: TheoremVerdict;
  theorem2?: TheoremVerdict;
  corollary2?: { pass: boolean; reason?: string };
}

export interface SolveResult {
  instance: unknown;
  weights: WeightViews;
  violations: ViolationReport;
  diagnosis: Diagnosis;
  needs_reexamination: boolean;
  offending: number[];
}

export interface MissingInfo {
  extremes?: boolean;
  best_to_others?: number[];
  others_to_worst?: number[];
  best_to_worst?: boolean;
}

export interface SessionView {
  id: string;
  n: number;
  best: number | null;
  worst: number | null;
  state: "selecting-extremes" | "comparing" | "solved";
  best_to_others: Record<string, string>;
  others_to_worst: Record<string, string>;
  best_to_worst: string | null;
  missing: MissingInfo;
  needs_reexamination: boolean | null;
  result: SolveResult | null;
}

export interface ComparisonUpdate {
  best?: number;
  worst?: number;
  best_to_others?: Record<string, string>;
  others_to_worst?: Record<string, string>;
  best_to_worst?: string;
}

export interface ResetRequest {
  best_to_others?: number[];
  others_to_worst?: number[];
  best_to_worst?: boolean;
  all?: boolean;
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

async function parseResponse(res: Response): Promise<SessionView> {
  const body = await res.json().catch(() => null);
  if (!res.ok) {
    const code = body?.error ?? "http_error";
    const message = body?.message ?? `request failed with status ${res.status}`;
    throw new ApiError(res.status, code, message);
  }
  return body as SessionView;
}

export class SessionApi {
  constructor(readonly baseUrl: string) {}

  private url(path: string): string {
    return `${this.baseUrl.replace(/\/$/, "")}${path}`;
  }

  private async send(path: string, method: string, body?: unknown): Promise<SessionView> {
    const res = await fetch(this.url(path), {
      method,
      headers: { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    return parseResponse(res);
  }

  create(n: number, best?: number, worst?: number): Promise<SessionView> {
    return this.send("/sessions", "POST", { n, best, worst });
  }

  updateComparisons(id: string, update: ComparisonUpdate): Promise<SessionView> {
    return this.send(`/sessions/${id}/comparisons`, "PUT", update);
  }

  reset(id: string, request: ResetRequest): Promise<SessionView> {
    return this.send(`/sessions/${id}/reset`, "POST", request);
  }

  getResult(id: string): Promise<SessionView> {
    return this.send(`/sessions/${id}/result`, "GET");
  }
}
