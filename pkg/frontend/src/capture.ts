/**
 * Live pointer capture: DOM events in, engine wire samples out.
 *
 * Capture is a pure tap on the page's event stream. While the engine is
 * idle the page keeps native behavior (selection, clicks, scrolling), so
 * preventDefault only fires once the host flips `intercepting` on after an
 * activation. Timestamps are milliseconds since start(), never wall clock.
 */

import type { PointerKind, SampleWire } from "./wire.js";

export interface CaptureOptions {
  /** "mouse" emits hover moves; "touch" adds contact start/end phases. */
  kind?: PointerKind;
  /** Millisecond clock, defaults to performance.now. */
  clock?: () => number;
  onSample: (sample: SampleWire) => void;
}

interface TouchLike {
  changedTouches?: ArrayLike<{ clientX: number; clientY: number }>;
}

export class PointerCapture {
  private readonly kind: PointerKind;
  private readonly clock: () => number;
  private readonly onSample: (sample: SampleWire) => void;
  private epoch = 0;
  private running = false;
  private intercepting = false;

  private readonly onMouseMove = (event: Event) => {
    const e = event as MouseEvent;
    this.emit(e.clientX, e.clientY, "move", event);
  };
  private readonly onTouchStart = (event: Event) =>
    this.emitTouch(event, "contact-start");
  private readonly onTouchMove = (event: Event) => this.emitTouch(event, "move");
  private readonly onTouchEnd = (event: Event) =>
    this.emitTouch(event, "contact-end");

  constructor(
    private readonly root: EventTarget,
    options: CaptureOptions,
  ) {
    this.kind = options.kind ?? "mouse";
    this.clock = options.clock ?? (() => performance.now());
    this.onSample = options.onSample;
  }

  start(): void {
    if (this.running) return;
    this.running = true;
    this.epoch = this.clock();
    if (this.kind === "mouse") {
      this.root.addEventListener("mousemove", this.onMouseMove);
    } else {
      this.root.addEventListener("touchstart", this.onTouchStart);
      this.root.addEventListener("touchmove", this.onTouchMove);
      this.root.addEventListener("touchend", this.onTouchEnd);
    }
  }

  stop(): void {
    if (!this.running) return;
    this.running = false;
    this.root.removeEventListener("mousemove", this.onMouseMove);
    this.root.removeEventListener("touchstart", this.onTouchStart);
    this.root.removeEventListener("touchmove", this.onTouchMove);
    this.root.removeEventListener("touchend", this.onTouchEnd);
  }

  /** While true, captured events are swallowed instead of passed through. */
  setIntercepting(on: boolean): void {
    this.intercepting = on;
  }

  isIntercepting(): boolean {
    return this.intercepting;
  }

  /** Milliseconds since start() on the capture clock. */
  now(): number {
    return Math.max(0, Math.round(this.clock() - this.epoch));
  }

  private emit(
    x: number,
    y: number,
    phase: SampleWire["phase"],
    event: Event,
  ): void {
    if (this.intercepting && event.cancelable) event.preventDefault();
    this.onSample({ t: this.now(), x, y, phase, kind: this.kind });
  }

  private emitTouch(event: Event, phase: SampleWire["phase"]): void {
    const touch = (event as TouchLike).changedTouches?.[0];
    if (!touch) return;
    this.emit(touch.clientX, touch.clientY, phase, event);
  }
}
