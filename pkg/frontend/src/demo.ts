/**
 * Demo page wiring: capture, bridge session, feedback overlay, holding
 * tank, and session recording, assembled over the HTTP bridge.
 *
 * All recognition happens on the bridge; this module only moves samples in
 * and renders events out. Samples batch per animation frame to keep one
 * HTTP round trip per frame, and an idle ticker advances the engine's
 * virtual clock when the pointer rests.
 */

import { BridgeClient, type FetchLike } from "./apiClient.js";
import { PointerCapture } from "./capture.js";
import { FeedbackRenderer } from "./feedback.js";
import { SessionRecorder } from "./recorder.js";
import { fileCommit, type FiledRef } from "./triage.js";
import { TankView } from "./tank.js";
import {
  buildTargetMap,
  domLayoutProvider,
  type LayoutProvider,
} from "./targetMap.js";
import type { EventEnvelope, SampleWire, TargetMapWire } from "./wire.js";

export interface DebouncedFn<A extends unknown[]> {
  (...args: A): void;
  cancel(): void;
}

/** Collapse bursts of calls into one call after `ms` of quiet. */
export function debounce<A extends unknown[]>(
  fn: (...args: A) => void,
  ms: number,
): DebouncedFn<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  const wrapped = (...args: A) => {
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(() => {
      timer = null;
      fn(...args);
    }, ms);
  };
  wrapped.cancel = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
  };
  return wrapped;
}

export interface DemoOptions {
  baseUrl?: string;
  mode?: "desktop" | "mobile";
  doc?: Document;
  layout?: LayoutProvider;
  fetchFn?: FetchLike;
  /** Milliseconds between idle ticks; 0 disables the ticker. */
  tickIntervalMs?: number;
  rebuildDebounceMs?: number;
}

export class DemoApp {
  readonly recorder = new SessionRecorder();
  private targetMap: TargetMapWire;
  private pending: SampleWire[] = [];
  private flushScheduled = false;
  private ticker: ReturnType<typeof setInterval> | null = null;
  private readonly rebuildSoon: DebouncedFn<[]>;
  /** The most recently filed commit, so popup edits know what to touch. */
  private lastFiled: FiledRef | null = null;
  /**
   * Client-side mirror of the store's default filing topic. It advances on
   * the same operations that advance the store's own default (a priority
   * commit filed through this client, or an explicit pick in the popup), so
   * the filing note can show where the next unfiled clip will land instead
   * of filing silently.
   */
  private lastPickedTopicId: string | null = null;

  private constructor(
    readonly client: BridgeClient,
    readonly sessionId: string,
    private readonly doc: Document,
    private readonly layout: LayoutProvider,
    readonly capture: PointerCapture,
    readonly feedback: FeedbackRenderer,
    readonly tank: TankView,
    map: TargetMapWire,
    rebuildDebounceMs: number,
  ) {
    this.targetMap = map;
    this.rebuildSoon = debounce(() => {
      void this.rebuildTargets();
    }, rebuildDebounceMs);
  }

  static async start(options: DemoOptions = {}): Promise<DemoApp> {
    const doc = options.doc ?? document;
    const view = doc.defaultView;
    if (!view) throw new Error("document is not attached to a window");
    const baseUrl = options.baseUrl ?? "";
    const mode = options.mode ?? "desktop";
    const layout = options.layout ?? domLayoutProvider();

    const client = new BridgeClient(baseUrl, options.fetchFn);
    const session = await client.createSession({ mode });
    const map = buildTargetMap(doc, { layout });
    await client.setTargets(session.sessionId, map);

    const overlay = doc.createElement("div");
    overlay.className = "wiggle-overlay";
    overlay.style.cssText =
      "position:fixed;inset:0;pointer-events:none;z-index:9999;";
    doc.body.appendChild(overlay);
    const feedback = new FeedbackRenderer(overlay, map, {
      activationReversals: session.config.activation_reversals,
      edgeFraction: session.config.edge_fraction,
      onUndo: () => {
        void client.undo(Date.now()).then(() => app.refreshTank());
      },
      onValenceChange: (value) => {
        if (app.lastFiled?.kind !== "clip") return;
        void client
          .setValence(app.lastFiled.id, value, Date.now())
          .then(() => app.refreshTank());
      },
      onTopicPick: (topicId) => {
        app.lastPickedTopicId = topicId;
        if (topicId === null || app.lastFiled?.kind !== "clip") return;
        void client
          .assignTopic(app.lastFiled.id, topicId, Date.now())
          .then(() => app.refreshTank());
      },
      onNotesChange: (notes) => {
        if (app.lastFiled?.kind !== "clip") return;
        void client
          .setNotes(app.lastFiled.id, notes, Date.now())
          .then(() => app.refreshTank());
      },
    });

    const tankRoot =
      doc.querySelector<HTMLElement>("[data-wiggle-tank]") ??
      doc.body.appendChild(doc.createElement("div"));
    const tank = new TankView(tankRoot, {
      readOnly: mode === "mobile",
      onQueryChange: (q) => void app.refreshTank(q),
      onTrash: (q) => {
        void client
          .batchTrash({ ...q, now: Date.now() })
          .then(() => app.refreshTank(q));
      },
    });

    const capture = new PointerCapture(doc, {
      kind: mode === "mobile" ? "touch" : "mouse",
      onSample: (sample) => app.ingest(sample),
    });

    const app = new DemoApp(
      client,
      session.sessionId,
      doc,
      layout,
      capture,
      feedback,
      tank,
      map,
      options.rebuildDebounceMs ?? 150,
    );
    app.recorder.setTargets(map);

    capture.start();
    const tickInterval = options.tickIntervalMs ?? 100;
    if (tickInterval > 0) {
      app.ticker = setInterval(() => {
        void app.idleTick();
      }, tickInterval);
    }
    view.addEventListener("scroll", app.rebuildSoon);
    view.addEventListener("resize", app.rebuildSoon);

    await app.refreshTank();
    return app;
  }

  /** Queue one sample and flush the batch on the next animation frame. */
  private ingest(sample: SampleWire): void {
    this.recorder.recordSample(sample);
    this.feedback.pointerMoved(sample.x, sample.y);
    this.pending.push(sample);
    if (this.flushScheduled) return;
    this.flushScheduled = true;
    const view = this.doc.defaultView;
    const raf = view?.requestAnimationFrame
      ? view.requestAnimationFrame.bind(view)
      : (cb: FrameRequestCallback) => setTimeout(() => cb(0), 16);
    raf(() => {
      this.flushScheduled = false;
      void this.flush();
    });
  }

  async flush(): Promise<void> {
    if (!this.pending.length) return;
    const batch = this.pending;
    this.pending = [];
    const events = await this.client.feed(this.sessionId, batch);
    await this.handleEvents(events);
  }

  async idleTick(): Promise<void> {
    if (this.pending.length) return;
    const events = await this.client.tick(this.sessionId, this.capture.now());
    await this.handleEvents(events);
  }

  async handleEvents(events: EventEnvelope[]): Promise<void> {
    if (!events.length) return;
    this.recorder.recordEvents(events);
    this.feedback.applyEvents(events);
    for (const envelope of events) {
      if (envelope.type === "Activated") this.capture.setIntercepting(true);
      if (envelope.type === "Committed" || envelope.type === "Aborted") {
        this.capture.setIntercepting(false);
      }
      if (envelope.type === "Committed") {
        const filed = await fileCommit(
          this.client,
          this.targetMap,
          envelope.payload,
          Date.now(),
        );
        this.lastFiled = filed;
        if (filed.kind === "topic") this.lastPickedTopicId = filed.id;
        await this.refreshTank();
      }
    }
  }

  async refreshTank(query = this.tank.queryWire()): Promise<void> {
    this.tank.setFilters(await this.client.storeFilters());
    this.tank.render(await this.client.query(query));
    this.feedback.setTopics(await this.client.topics(), this.lastPickedTopicId);
  }

  async rebuildTargets(): Promise<void> {
    const map = buildTargetMap(this.doc, { layout: this.layout });
    this.targetMap = map;
    this.recorder.setTargets(map);
    this.feedback.setTargetMap(map);
    await this.client.setTargets(this.sessionId, map);
  }

  async dispose(): Promise<void> {
    this.capture.stop();
    if (this.ticker !== null) clearInterval(this.ticker);
    this.rebuildSoon.cancel();
    this.doc.defaultView?.removeEventListener("scroll", this.rebuildSoon);
    this.doc.defaultView?.removeEventListener("resize", this.rebuildSoon);
    this.feedback.dispose();
    await this.client.deleteSession(this.sessionId).catch(() => undefined);
  }
}
