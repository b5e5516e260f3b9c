// Throttled design requests with sequence-number reconciliation.
//
// A change is sent no sooner than `intervalMs` after it was scheduled and
// no sooner than `intervalMs` after the previous send, so a continuous drag
// produces at most one request per interval and the final state is always
// sent. Responses older than one already applied are dropped.

export interface Clock {
  now(): number;
  setTimeout(fn: () => void, ms: number): unknown;
  clearTimeout(handle: unknown): void;
}

export const systemClock: Clock = {
  now: () => Date.now(),
  setTimeout: (fn, ms) => setTimeout(fn, ms),
  clearTimeout: (h) => clearTimeout(h as ReturnType<typeof setTimeout>),
};

export const DEFAULT_INTERVAL_MS = 100;

export interface SchedulerOptions<Req, Res> {
  send(request: Req, seq: number): Promise<Res>;
  apply(response: Res, seq: number): void;
  fail?(error: unknown, seq: number): void;
  intervalMs?: number;
  clock?: Clock;
}

export class DesignScheduler<Req, Res> {
  private readonly interval: number;
  private readonly clock: Clock;
  private timer: unknown = null;
  private latest: Req | null = null;
  private lastSent = -Infinity;
  private sentSeq = 0;
  private settledSeq = 0;
  private appliedSeq = 0;
  private dropped = 0;

  constructor(private readonly opts: SchedulerOptions<Req, Res>) {
    this.interval = opts.intervalMs ?? DEFAULT_INTERVAL_MS;
    this.clock = opts.clock ?? systemClock;
  }

  schedule(request: Req): void {
    this.latest = request;
    if (this.timer !== null) return;
    const now = this.clock.now();
    const wait = Math.max(this.interval, this.lastSent + this.interval - now);
    this.timer = this.clock.setTimeout(() => this.fire(), wait);
  }

  /** True while a change has not been answered yet. */
  get pending(): boolean {
    return this.timer !== null || this.settledSeq < this.sentSeq;
  }

  get lastApplied(): number {
    return this.appliedSeq;
  }

  get discarded(): number {
    return this.dropped;
  }

  cancel(): void {
    if (this.timer !== null) this.clock.clearTimeout(this.timer);
    this.timer = null;
    this.latest = null;
  }

  private fire(): void {
    this.timer = null;
    const request = this.latest;
    this.latest = null;
    if (request === null) return;
    const seq = ++this.sentSeq;
    this.lastSent = this.clock.now();
    this.opts.send(request, seq).then(
      (response) => this.settle(seq, () => this.opts.apply(response, seq)),
      (error) => this.settle(seq, () => this.opts.fail?.(error, seq)),
    );
  }

  private settle(seq: number, deliver: () => void): void {
    this.settledSeq = Math.max(this.settledSeq, seq);
    if (seq <= this.appliedSeq) {
      this.dropped++;
      return;
    }
    this.appliedSeq = seq;
    deliver();
  }
}
