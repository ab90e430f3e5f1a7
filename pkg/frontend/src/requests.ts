/** Debounced, latest-wins request plumbing.
 *
 * At most one prediction is in flight; responses that arrive for a request
 * older than the newest issued one are discarded, so the rendered state can
 * never regress to an earlier edit regardless of network ordering.
 */

import { Condition, PredictResponse, WingShapeJson } from "./types.js";

export type FetchLike = (url: string, init: RequestInit) => Promise<Response>;

export interface TimerHandle {
  cancel(): void;
}

export type Scheduler = (fn: () => void, ms: number) => TimerHandle;

export const defaultScheduler: Scheduler = (fn, ms) => {
  const id = setTimeout(fn, ms);
  return { cancel: () => clearTimeout(id) };
};

export class Debouncer {
  private pending?: { handle: TimerHandle; fn: () => void };

  constructor(
    private readonly delayMs: number,
    private readonly schedule: Scheduler = defaultScheduler,
  ) {}

  /** Trailing-edge debounce; a new call supersedes the pending one. */
  push(fn: () => void): void {
    this.pending?.handle.cancel();
    const handle = this.schedule(() => {
      this.pending = undefined;
      fn();
    }, this.delayMs);
    this.pending = { handle, fn };
  }

  /** Run the pending call now (discrete commits skip the delay). */
  flush(): void {
    if (this.pending) {
      this.pending.handle.cancel();
      const fn = this.pending.fn;
      this.pending = undefined;
      fn();
    }
  }

  get hasPending(): boolean {
    return this.pending !== undefined;
  }
}

/** Monotonic token issuer for latest-wins arbitration. */
export class RequestGate {
  private current = 0;

  next(): number {
    return ++this.current;
  }

  isLatest(token: number): boolean {
    return token === this.current;
  }
}

export interface PredictOutcome {
  token: number;
  response: PredictResponse | null; // null when superseded or failed
  error?: string;
  status?: number;
}

interface QueuedRequest {
  geometry: WingShapeJson;
  conditions: Condition[];
  onSettled: (outcome: PredictOutcome) => void;
}

export class PredictClient {
  readonly gate = new RequestGate();
  private readonly debouncer: Debouncer;
  private inFlight = false;
  private queued: QueuedRequest | null = null;
  requestsSent = 0;

  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
    debounceMs = 150,
    scheduler: Scheduler = defaultScheduler,
  ) {
    this.debouncer = new Debouncer(debounceMs, scheduler);
  }

  /** Queue a prediction; continuous edits debounce, discrete ones flush.
   * At most one request is in flight — newer edits replace the queued one
   * and fire when the active request settles. */
  request(
    geometry: WingShapeJson,
    conditions: Condition[],
    onSettled: (outcome: PredictOutcome) => void,
    immediate = false,
  ): void {
    this.debouncer.push(() => this.launch({ geometry, conditions, onSettled }));
    if (immediate) this.debouncer.flush();
  }

  private launch(req: QueuedRequest): void {
    if (this.inFlight) {
      if (this.queued) {
        // the replaced edit is stale by definition
        this.queued.onSettled({ token: this.gate.next(), response: null });
      }
      this.queued = req;
      return;
    }
    void this.send(req);
  }

  private async send(req: QueuedRequest): Promise<void> {
    const token = this.gate.next();
    this.inFlight = true;
    this.requestsSent++;
    try {
      const res = await this.fetchFn(`${this.baseUrl}/api/predict`, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify({ geometry: req.geometry, conditions: req.conditions }),
      });
      if (!res.ok) {
        req.onSettled({ token, response: null, status: res.status, error: await res.text() });
      } else {
        const body = (await res.json()) as PredictResponse;
        // a newer edit may have been queued while this one was in flight
        req.onSettled(
          this.gate.isLatest(token) ? { token, response: body } : { token, response: null },
        );
      }
    } catch (err) {
      req.onSettled({ token, response: null, error: String(err) });
    } finally {
      this.inFlight = false;
      if (this.queued) {
        const next = this.queued;
        this.queued = null;
        void this.send(next);
      }
    }
  }
}
