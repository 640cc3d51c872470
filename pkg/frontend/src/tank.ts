/**
 * Holding-tank view: the triage list with filter chips, sort menu, focus
 * slider, and batch trash.
 *
 * The view renders query results produced by the store; it never filters or
 * sorts on its own. Clips below the focus threshold arrive in a separate
 * group and are rendered grayed out after the main list. The read-only
 * variant (small screens) drops the mutating controls but keeps browsing.
 */

import type { ClipWire, TankQueryWire } from "./wire.js";

export interface TankQueryState {
  enabledFilters: string[];
  sortKey: "valenceDesc" | "temporal";
  focusThreshold: number;
}

export interface TankOptions {
  readOnly?: boolean;
  onQueryChange?: (query: TankQueryState) => void;
  onTrash?: (query: TankQueryState) => void;
}

export const TRASH_LABEL = "Move these clips to trash";

function valenceBadge(valence: number | null): string {
  if (valence === null) return "unrated";
  return valence > 0 ? `+${valence}` : String(valence);
}

export class TankView {
  private readonly doc: Document;
  private readonly options: TankOptions;

  private readonly chipRow: HTMLDivElement;
  private readonly sortSelect: HTMLSelectElement;
  private readonly focusSlider: HTMLInputElement;
  private readonly focusValue: HTMLSpanElement;
  private readonly trashButton: HTMLButtonElement | null = null;
  private readonly mainList: HTMLDivElement;
  private readonly belowFocusList: HTMLDivElement;

  private availableFilters: string[] = [];
  private enabled = new Set<string>();

  constructor(
    private readonly container: HTMLElement,
    options: TankOptions = {},
  ) {
    this.doc = container.ownerDocument;
    this.options = options;

    const header = this.doc.createElement("div");
    header.className = "tank-header";

    this.chipRow = this.doc.createElement("div");
    this.chipRow.className = "tank-chips";
    header.appendChild(this.chipRow);

    const controls = this.doc.createElement("div");
    controls.className = "tank-controls";

    this.sortSelect = this.doc.createElement("select");
    this.sortSelect.className = "tank-sort";
    for (const [value, label] of [
      ["valenceDesc", "Strongest rating first"],
      ["temporal", "Newest first"],
    ] as const) {
      const option = this.doc.createElement("option");
      option.value = value;
      option.textContent = label;
      this.sortSelect.appendChild(option);
    }
    this.sortSelect.addEventListener("change", () => this.emitQueryChange());
    controls.appendChild(this.sortSelect);

    const focusWrap = this.doc.createElement("label");
    focusWrap.className = "tank-focus";
    focusWrap.append("Focus threshold ");
    this.focusSlider = this.doc.createElement("input");
    this.focusSlider.className = "tank-focus-slider";
    this.focusSlider.type = "range";
    this.focusSlider.min = "0";
    this.focusSlider.max = "10";
    this.focusSlider.step = "1";
    this.focusSlider.value = "0";
    this.focusSlider.addEventListener("input", () => {
      this.focusValue.textContent = this.focusSlider.value;
      this.emitQueryChange();
    });
    this.focusValue = this.doc.createElement("span");
    this.focusValue.className = "tank-focus-value";
    this.focusValue.textContent = "0";
    focusWrap.appendChild(this.focusSlider);
    focusWrap.appendChild(this.focusValue);
    controls.appendChild(focusWrap);

    if (!options.readOnly) {
      const trash = this.doc.createElement("button");
      trash.className = "tank-trash";
      trash.type = "button";
      trash.textContent = TRASH_LABEL;
      trash.addEventListener("click", () => {
        this.options.onTrash?.(this.query());
      });
      controls.appendChild(trash);
      this.trashButton = trash;
    }

    header.appendChild(controls);
    container.appendChild(header);

    this.mainList = this.doc.createElement("div");
    this.mainList.className = "tank-main";
    container.appendChild(this.mainList);

    this.belowFocusList = this.doc.createElement("div");
    this.belowFocusList.className = "tank-below-focus";
    this.belowFocusList.style.opacity = "0.45";
    container.appendChild(this.belowFocusList);
  }

  /** Rebuild the filter chips; previously enabled chips stay enabled. */
  setFilters(available: string[]): void {
    this.availableFilters = [...available];
    for (const name of [...this.enabled]) {
      if (!available.includes(name)) this.enabled.delete(name);
    }
    this.chipRow.textContent = "";
    for (const name of this.availableFilters) {
      const chip = this.doc.createElement("button");
      chip.className = "tank-chip";
      chip.type = "button";
      chip.textContent = name;
      chip.dataset.filter = name;
      chip.dataset.enabled = this.enabled.has(name) ? "true" : "false";
      chip.addEventListener("click", () => {
        if (this.enabled.has(name)) {
          this.enabled.delete(name);
          chip.dataset.enabled = "false";
        } else {
          this.enabled.add(name);
          chip.dataset.enabled = "true";
        }
        this.emitQueryChange();
      });
      this.chipRow.appendChild(chip);
    }
  }

  /** Render a query result: main cards, then the grayed below-focus group. */
  render(result: { main: ClipWire[]; belowFocus: ClipWire[] }): void {
    this.renderList(this.mainList, result.main);
    this.renderList(this.belowFocusList, result.belowFocus);
    this.belowFocusList.style.display = result.belowFocus.length ? "block" : "none";
  }

  query(): TankQueryState {
    return {
      enabledFilters: [...this.enabled].sort(),
      sortKey: this.sortSelect.value as TankQueryState["sortKey"],
      focusThreshold: Number(this.focusSlider.value),
    };
  }

  /** The current query in the bridge's wire shape. */
  queryWire(): TankQueryWire {
    return this.query();
  }

  private emitQueryChange(): void {
    this.options.onQueryChange?.(this.query());
  }

  private renderList(list: HTMLElement, clips: ClipWire[]): void {
    list.textContent = "";
    for (const clip of clips) {
      const card = this.doc.createElement("div");
      card.className = "tank-card";
      card.dataset.clipId = clip.id;

      const badge = this.doc.createElement("span");
      badge.className = "tank-valence";
      badge.textContent = valenceBadge(clip.valence);
      card.appendChild(badge);

      const text = this.doc.createElement("span");
      text.className = "tank-text";
      text.textContent = clip.parts.map(([, t]) => t).join(" ");
      card.appendChild(text);

      if (clip.provenance) {
        const source = this.doc.createElement("span");
        source.className = "tank-provenance";
        source.textContent = clip.provenance;
        card.appendChild(source);
      }
      if (clip.notes) {
        const notes = this.doc.createElement("span");
        notes.className = "tank-notes";
        notes.textContent = clip.notes;
        card.appendChild(notes);
      }
      list.appendChild(card);
    }
  }
}
