// Wizard state machine. The server session is the single source of truth:
// a step only advances once the server has accepted the judgments it
// covers, and every view is reconstructible from the persisted session.

import { ApiError, ComparisonUpdate, SessionApi, SessionView } from "./api.js";

export type Step = "setup" | "best-row" | "worst-column" | "review";

export type EntryKind = "best" | "worst" | "shared";

export interface WizardState {
  step: Step;
  session: SessionView | null;
  busy: boolean;
  /** retryable failure banner (network/server trouble) */
  error: string | null;
  /** inline 422 messages keyed by entry key */
  fieldErrors: Record<string, string>;
}

export function initialState(): WizardState {
  return { step: "setup", session: null, busy: false, error: null, fieldErrors: {} };
}

export function entryKey(kind: EntryKind, j: number | null): string {
  return kind === "shared" ? "shared" : `${kind}:${j}`;
}

export function middles(session: SessionView): number[] {
  const out: number[] = [];
  for (let j = 1; j <= session.n; j++) {
    if (j !== session.best && j !== session.worst) out.push(j);
  }
  return out;
}

export function bestRowComplete(session: SessionView): boolean {
  if (session.best === null) return false;
  return (
    session.best_to_worst !== null &&
    middles(session).every((j) => session.best_to_others[String(j)] !== undefined)
  );
}

export function worstColumnComplete(session: SessionView): boolean {
  if (session.best === null) return false;
  return middles(session).every((j) => session.others_to_worst[String(j)] !== undefined);
}

/** The furthest step the persisted session justifies (refresh recovery). */
export function stepForSession(session: SessionView): Step {
  if (session.best === null) return "setup";
  if (session.state === "solved") return "review";
  if (!bestRowComplete(session)) return "best-row";
  return "worst-column";
}

export function canAdvance(state: WizardState): boolean {
  if (!state.session) return false;
  if (state.step === "best-row") return bestRowComplete(state.session);
  if (state.step === "worst-column") return state.session.state === "solved";
  return false;
}

export class Wizard {
  state: WizardState = initialState();
  private lastFailed: (() => Promise<void>) | null = null;

  constructor(
    private api: SessionApi,
    private onChange: (state: WizardState) => void = () => {},
  ) {}

  private set(patch: Partial<WizardState>): void {
    this.state = { ...this.state, ...patch };
    this.onChange(this.state);
  }

  /** Run a server call with busy/error bookkeeping; rethrows nothing. */
  private async run(action: () => Promise<void>): Promise<void> {
    this.set({ busy: true, error: null });
    try {
      await action();
      this.lastFailed = null;
      this.set({ busy: false });
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        // handled by the caller via fieldErrors; not a banner
        this.lastFailed = null;
        this.set({ busy: false });
        return;
      }
      this.lastFailed = action;
      this.set({ busy: false, error: err instanceof Error ? err.message : String(err) });
    }
  }

  async retry(): Promise<void> {
    const action = this.lastFailed;
    if (action) await this.run(action);
  }

  async start(n: number, best: number, worst: number): Promise<void> {
    await this.run(async () => {
      const session = await this.api.create(n, best, worst);
      this.set({ session, step: "best-row", fieldErrors: {} });
    });
  }

  /** Rebuild the wizard from a persisted session id (refresh safety). */
  async resume(sessionId: string): Promise<void> {
    await this.run(async () => {
      const session = await this.api.getResult(sessionId);
      this.set({ session, step: stepForSession(session), fieldErrors: {} });
    });
  }

  async setExtremes(best: number, worst: number): Promise<void> {
    const session = this.state.session;
    if (!session) return;
    await this.run(async () => {
      const updated = await this.api.updateComparisons(session.id, { best, worst });
      this.set({ session: updated, step: "best-row" });
    });
  }

  async setEntry(kind: EntryKind, j: number | null, value: string): Promise<void> {
    const session = this.state.session;
    if (!session) return;
    const key = entryKey(kind, j);
    const update: ComparisonUpdate =
      kind === "shared"
        ? { best_to_worst: value }
        : kind === "best"
          ? { best_to_others: { [String(j)]: value } }
          : { others_to_worst: { [String(j)]: value } };
    await this.run(async () => {
      try {
        const updated = await this.api.updateComparisons(session.id, update);
        const fieldErrors = { ...this.state.fieldErrors };
        delete fieldErrors[key];
        this.set({ session: updated, fieldErrors });
      } catch (err) {
        if (err instanceof ApiError && err.status === 422) {
          this.set({ fieldErrors: { ...this.state.fieldErrors, [key]: err.message } });
        }
        throw err;
      }
    });
  }

  async clearEntry(kind: EntryKind, j: number | null): Promise<void> {
    const session = this.state.session;
    if (!session) return;
    const request =
      kind === "shared"
        ? { best_to_worst: true }
        : kind === "best"
          ? { best_to_others: [j as number] }
          : { others_to_worst: [j as number] };
    await this.run(async () => {
      const updated = await this.api.reset(session.id, request);
      this.set({ session: updated, step: stepForSession(updated) });
    });
  }

  next(): void {
    if (!canAdvance(this.state)) return;
    if (this.state.step === "best-row") this.set({ step: "worst-column" });
    else if (this.state.step === "worst-column") this.set({ step: "review" });
  }

  back(): void {
    const order: Step[] = ["setup", "best-row", "worst-column", "review"];
    const at = order.indexOf(this.state.step);
    if (at > 1) this.set({ step: order[at - 1] });
  }
}
