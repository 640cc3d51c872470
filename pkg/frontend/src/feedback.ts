/**
 * Gesture feedback overlay: pointer tail, candidate border, commit colors,
 * undo button, and the post-commit popup.
 *
 * The renderer is a pure view over the engine's event stream. It never
 * infers gesture state on its own: every visual change is driven by an
 * event envelope, and the colors land only on the candidate or committed
 * regions. Border opacity grows linearly with reversal progress so the
 * shade deepens as the gesture approaches activation.
 */

import type {
  CommittedPayload,
  EventEnvelope,
  RegionWire,
  TargetMapWire,
  TopicWire,
} from "./wire.js";

export const FEEDBACK_COLORS = {
  activation: "#2563eb",
  valencePositive: "#16a34a",
  valenceNegative: "#dc2626",
  priorityUrgent: "#ca8a04",
  priorityHigh: "#eab308",
  priorityNormal: "#6b7280",
  priorityLow: "#9ca3af",
  neutral: "#64748b",
} as const;

export interface FeedbackCallbacks {
  onUndo?: () => void;
  onValenceChange?: (value: number) => void;
  onTopicPick?: (topicId: string | null) => void;
  onNotesChange?: (notes: string) => void;
  onTitleChange?: (title: string) => void;
}

export interface FeedbackOptions extends FeedbackCallbacks {
  /** Reversals needed to activate; scales the border shade. */
  activationReversals?: number;
  /** Swipe fraction treated as reaching the viewport edge. */
  edgeFraction?: number;
  tailLength?: number;
  undoWindowMs?: number;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function commitColor(encoding: CommittedPayload["encoding"]): string {
  if (encoding === null) return FEEDBACK_COLORS.activation;
  if (encoding.kind === "valence") {
    if (encoding.score > 0) return FEEDBACK_COLORS.valencePositive;
    if (encoding.score < 0) return FEEDBACK_COLORS.valenceNegative;
    return FEEDBACK_COLORS.neutral;
  }
  switch (encoding.level) {
    case "urgent":
      return FEEDBACK_COLORS.priorityUrgent;
    case "high":
      return FEEDBACK_COLORS.priorityHigh;
    case "low":
      return FEEDBACK_COLORS.priorityLow;
    default:
      return FEEDBACK_COLORS.priorityNormal;
  }
}

function commitGlyph(encoding: CommittedPayload["encoding"]): string {
  if (encoding === null || encoding.kind !== "valence") return "";
  if (encoding.score > 0) return "\u{1F44D}";
  if (encoding.score < 0) return "\u{1F44E}";
  return "";
}

export class FeedbackRenderer {
  private readonly doc: Document;
  private readonly activationReversals: number;
  private readonly edgeFraction: number;
  private readonly tailLength: number;
  private readonly undoWindowMs: number;
  private readonly callbacks: FeedbackCallbacks;

  private map: TargetMapWire;
  private regionsById = new Map<string, RegionWire>();

  private readonly tailSvg: SVGSVGElement;
  private readonly tailLine: SVGPolylineElement;
  private readonly border: HTMLDivElement;
  private readonly commitLayer: HTMLDivElement;
  private readonly undoButton: HTMLButtonElement;
  private readonly popup: HTMLDivElement;
  private readonly filingNote: HTMLDivElement;
  private readonly titleInput: HTMLInputElement;
  private readonly valenceSlider: HTMLInputElement;
  private readonly valenceValue: HTMLSpanElement;
  private readonly topicPicker: HTMLSelectElement;
  private readonly notesArea: HTMLTextAreaElement;

  private tailPoints: { x: number; y: number }[] = [];
  private currentOpacity = 0;
  private undoTimer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private readonly container: HTMLElement,
    map: TargetMapWire,
    options: FeedbackOptions = {},
  ) {
    this.doc = container.ownerDocument;
    this.map = map;
    this.indexRegions();
    this.activationReversals = options.activationReversals ?? 5;
    this.edgeFraction = options.edgeFraction ?? 0.9;
    this.tailLength = options.tailLength ?? 24;
    this.undoWindowMs = options.undoWindowMs ?? 10_000;
    this.callbacks = options;

    if (!container.style.position) container.style.position = "relative";

    this.tailSvg = this.doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
    this.tailSvg.setAttribute("class", "wiggle-tail");
    this.tailSvg.style.cssText =
      "position:absolute;inset:0;width:100%;height:100%;pointer-events:none;overflow:visible;";
    this.tailLine = this.doc.createElementNS(SVG_NS, "polyline") as SVGPolylineElement;
    this.tailLine.setAttribute("fill", "none");
    this.tailLine.setAttribute("stroke", FEEDBACK_COLORS.activation);
    this.tailLine.setAttribute("stroke-width", "2");
    this.tailLine.setAttribute("stroke-linecap", "round");
    this.tailLine.setAttribute("opacity", "0.6");
    this.tailSvg.appendChild(this.tailLine);
    container.appendChild(this.tailSvg);

    this.border = this.doc.createElement("div");
    this.border.className = "wiggle-border";
    this.border.style.cssText =
      "position:absolute;display:none;pointer-events:none;" +
      `border:2px dotted ${FEEDBACK_COLORS.activation};border-radius:4px;`;
    container.appendChild(this.border);

    this.commitLayer = this.doc.createElement("div");
    this.commitLayer.className = "wiggle-commits";
    container.appendChild(this.commitLayer);

    this.undoButton = this.doc.createElement("button");
    this.undoButton.className = "wiggle-undo";
    this.undoButton.type = "button";
    this.undoButton.textContent = "Undo";
    this.undoButton.style.cssText =
      "position:fixed;bottom:16px;right:16px;display:none;z-index:10000;" +
      "padding:6px 14px;border-radius:6px;border:none;cursor:pointer;" +
      "background:#1f2937;color:#fff;font:13px system-ui,sans-serif;";
    this.undoButton.addEventListener("click", () => {
      this.hideUndo();
      this.hidePopup();
      this.clearCommits();
      this.callbacks.onUndo?.();
    });
    container.appendChild(this.undoButton);

    this.popup = this.doc.createElement("div");
    this.popup.className = "wiggle-popup";
    this.popup.style.cssText =
      "position:fixed;bottom:56px;right:16px;display:none;z-index:10000;" +
      "width:260px;padding:12px;border-radius:8px;background:#fff;" +
      "box-shadow:0 4px 16px rgba(0,0,0,0.25);font:13px system-ui,sans-serif;";

    this.filingNote = this.doc.createElement("div");
    this.filingNote.className = "wiggle-filing-note";
    this.filingNote.style.cssText =
      "display:none;margin-bottom:8px;padding:4px 6px;border-radius:4px;" +
      "background:#fef3c7;color:#92400e;";
    this.popup.appendChild(this.filingNote);

    this.titleInput = this.doc.createElement("input");
    this.titleInput.className = "wiggle-topic-title";
    this.titleInput.type = "text";
    this.titleInput.placeholder = "Topic title";
    this.titleInput.style.cssText = "display:none;width:100%;margin-bottom:8px;";
    this.titleInput.addEventListener("change", () => {
      this.callbacks.onTitleChange?.(this.titleInput.value);
    });
    this.popup.appendChild(this.titleInput);

    const sliderRow = this.doc.createElement("div");
    sliderRow.className = "wiggle-valence-row";
    this.valenceSlider = this.doc.createElement("input");
    this.valenceSlider.className = "wiggle-valence-slider";
    this.valenceSlider.type = "range";
    this.valenceSlider.min = "-10";
    this.valenceSlider.max = "10";
    this.valenceSlider.step = "1";
    this.valenceSlider.addEventListener("input", () => {
      this.valenceValue.textContent = this.formatValence(
        Number(this.valenceSlider.value),
      );
      this.callbacks.onValenceChange?.(Number(this.valenceSlider.value));
    });
    this.valenceValue = this.doc.createElement("span");
    this.valenceValue.className = "wiggle-valence-value";
    sliderRow.appendChild(this.valenceSlider);
    sliderRow.appendChild(this.valenceValue);
    sliderRow.style.display = "none";
    this.popup.appendChild(sliderRow);

    this.topicPicker = this.doc.createElement("select");
    this.topicPicker.className = "wiggle-topic-picker";
    this.topicPicker.style.cssText = "width:100%;margin:8px 0;";
    this.topicPicker.addEventListener("change", () => {
      const value = this.topicPicker.value;
      this.callbacks.onTopicPick?.(value === "" ? null : value);
    });
    this.popup.appendChild(this.topicPicker);

    this.notesArea = this.doc.createElement("textarea");
    this.notesArea.className = "wiggle-notes";
    this.notesArea.placeholder = "Notes";
    this.notesArea.style.cssText = "width:100%;min-height:48px;";
    this.notesArea.addEventListener("change", () => {
      this.callbacks.onNotesChange?.(this.notesArea.value);
    });
    this.popup.appendChild(this.notesArea);

    const popupUndo = this.doc.createElement("button");
    popupUndo.className = "wiggle-popup-undo";
    popupUndo.type = "button";
    popupUndo.textContent = "Undo";
    popupUndo.addEventListener("click", () => {
      this.hideUndo();
      this.hidePopup();
      this.clearCommits();
      this.callbacks.onUndo?.();
    });
    this.popup.appendChild(popupUndo);

    const popupClose = this.doc.createElement("button");
    popupClose.className = "wiggle-popup-close";
    popupClose.type = "button";
    popupClose.textContent = "Close";
    popupClose.addEventListener("click", () => this.hidePopup());
    this.popup.appendChild(popupClose);

    container.appendChild(this.popup);
  }

  private indexRegions(): void {
    this.regionsById = new Map(this.map.regions.map((r) => [r.id, r]));
  }

  setTargetMap(map: TargetMapWire): void {
    this.map = map;
    this.indexRegions();
  }

  /** Populate the popup's topic picker; the default pick is shown, not silent. */
  setTopics(topics: TopicWire[], lastPickedId: string | null): void {
    this.topicPicker.textContent = "";
    const unfiled = this.doc.createElement("option");
    unfiled.value = "";
    unfiled.textContent = "(unfiled)";
    this.topicPicker.appendChild(unfiled);
    for (const topic of topics) {
      const option = this.doc.createElement("option");
      option.value = topic.id;
      option.textContent = topic.title;
      this.topicPicker.appendChild(option);
    }
    const picked = lastPickedId && topics.some((t) => t.id === lastPickedId);
    this.topicPicker.value = picked ? lastPickedId : "";
    if (picked) {
      const title = topics.find((t) => t.id === lastPickedId)?.title ?? lastPickedId;
      this.filingNote.textContent = `New clips file into: ${title}`;
      this.filingNote.style.display = "block";
    } else {
      this.filingNote.textContent = "";
      this.filingNote.style.display = "none";
    }
  }

  /** Feed the recent pointer position so the tail follows the cursor. */
  pointerMoved(x: number, y: number): void {
    this.tailPoints.push({ x, y });
    if (this.tailPoints.length > this.tailLength) {
      this.tailPoints.splice(0, this.tailPoints.length - this.tailLength);
    }
    this.renderTail();
  }

  applyEvents(envelopes: EventEnvelope[]): void {
    for (const envelope of envelopes) this.applyEvent(envelope);
  }

  applyEvent(envelope: EventEnvelope): void {
    switch (envelope.type) {
      case "TrackingProgress": {
        const { reversals, candidateTargetId } = envelope.payload;
        this.clearCommits();
        if (candidateTargetId === null) {
          this.hideBorder();
          return;
        }
        const ratio = Math.min(1, reversals / this.activationReversals);
        this.showBorder(candidateTargetId, ratio, "dotted");
        return;
      }
      case "Activated": {
        this.clearCommits();
        this.showBorder(envelope.payload.targetId, 1, "solid");
        return;
      }
      case "ExtensionUpdated": {
        const { direction, fractionOfAvailable } = envelope.payload;
        this.border.dataset.direction = direction;
        this.border.dataset.preview = this.previewLabel(
          direction,
          fractionOfAvailable,
        );
        return;
      }
      case "Committed": {
        this.hideBorder();
        this.clearTail();
        this.renderCommit(envelope.payload);
        return;
      }
      case "Aborted": {
        this.hideBorder();
        this.clearTail();
        return;
      }
      default:
        return;
    }
  }

  /** Current border shade, 0 when hidden. */
  borderOpacity(): number {
    return this.currentOpacity;
  }

  dispose(): void {
    if (this.undoTimer !== null) clearTimeout(this.undoTimer);
    this.tailSvg.remove();
    this.border.remove();
    this.commitLayer.remove();
    this.undoButton.remove();
    this.popup.remove();
  }

  // -- internals ---------------------------------------------------------------

  private formatValence(value: number): string {
    return value > 0 ? `+${value}` : String(value);
  }

  private previewLabel(direction: string, fraction: number): string {
    if (direction === "left" || direction === "right") {
      const magnitude = Math.min(10, Math.floor(fraction * 10 + 0.5));
      return this.formatValence(direction === "left" ? -magnitude : magnitude);
    }
    const edge = fraction >= this.edgeFraction;
    if (direction === "up") return edge ? "urgent" : "high";
    return edge ? "low" : "normal";
  }

  private regionRect(targetId: string): RegionWire["rect"] | null {
    return this.regionsById.get(targetId)?.rect ?? null;
  }

  private showBorder(
    targetId: string,
    opacity: number,
    style: "dotted" | "solid",
  ): void {
    const rect = this.regionRect(targetId);
    if (!rect) {
      this.hideBorder();
      return;
    }
    const [x, y, w, h] = rect;
    this.border.style.display = "block";
    this.border.style.left = `${x}px`;
    this.border.style.top = `${y}px`;
    this.border.style.width = `${w}px`;
    this.border.style.height = `${h}px`;
    this.border.style.borderStyle = style;
    this.border.style.opacity = String(opacity);
    this.border.dataset.targetId = targetId;
    this.currentOpacity = opacity;
  }

  private hideBorder(): void {
    this.border.style.display = "none";
    delete this.border.dataset.targetId;
    delete this.border.dataset.direction;
    delete this.border.dataset.preview;
    this.currentOpacity = 0;
  }

  private renderCommit(payload: CommittedPayload): void {
    this.clearCommits();
    const color = commitColor(payload.encoding);
    const glyph = commitGlyph(payload.encoding);
    for (const targetId of payload.targetIds) {
      const rect = this.regionRect(targetId);
      if (!rect) continue;
      const [x, y, w, h] = rect;
      const flash = this.doc.createElement("div");
      flash.className = "wiggle-flash";
      flash.style.cssText =
        "position:absolute;pointer-events:none;border-radius:4px;opacity:0.85;";
      flash.style.left = `${x}px`;
      flash.style.top = `${y}px`;
      flash.style.width = `${w}px`;
      flash.style.height = `${h}px`;
      flash.style.background = color;
      flash.dataset.targetId = targetId;
      if (glyph) {
        const span = this.doc.createElement("span");
        span.className = "wiggle-glyph";
        span.textContent = glyph;
        flash.appendChild(span);
      }
      if (payload.encoding?.kind === "priority") {
        const badge = this.doc.createElement("span");
        badge.className = "wiggle-priority-badge";
        badge.textContent = payload.encoding.level;
        flash.appendChild(badge);
      }
      this.commitLayer.appendChild(flash);
    }
    this.showUndo();
    this.showPopup(payload);
  }

  private clearCommits(): void {
    this.commitLayer.textContent = "";
  }

  private showUndo(): void {
    this.undoButton.style.display = "block";
    if (this.undoTimer !== null) clearTimeout(this.undoTimer);
    this.undoTimer = setTimeout(() => this.hideUndo(), this.undoWindowMs);
  }

  private hideUndo(): void {
    this.undoButton.style.display = "none";
    if (this.undoTimer !== null) {
      clearTimeout(this.undoTimer);
      this.undoTimer = null;
    }
  }

  private showPopup(payload: CommittedPayload): void {
    const sliderRow = this.valenceSlider.parentElement as HTMLElement;
    if (payload.encoding?.kind === "valence") {
      sliderRow.style.display = "flex";
      this.valenceSlider.value = String(payload.encoding.score);
      this.valenceValue.textContent = this.formatValence(payload.encoding.score);
    } else {
      sliderRow.style.display = "none";
    }
    if (payload.encoding?.kind === "priority") {
      const title = payload.targetIds
        .map((id) => this.regionsById.get(id)?.text ?? "")
        .join(" ")
        .trim();
      this.titleInput.style.display = "block";
      this.titleInput.value = title;
    } else {
      this.titleInput.style.display = "none";
    }
    this.notesArea.value = "";
    this.popup.style.display = "block";
  }

  private hidePopup(): void {
    this.popup.style.display = "none";
  }

  private renderTail(): void {
    this.tailLine.setAttribute(
      "points",
      this.tailPoints.map((p) => `${p.x},${p.y}`).join(" "),
    );
  }

  private clearTail(): void {
    this.tailPoints = [];
    this.renderTail();
  }
}
