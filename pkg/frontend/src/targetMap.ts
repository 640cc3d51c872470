/**
 * Build a target-map snapshot from a live page.
 *
 * Block regions come from block-level semantic elements, word regions from
 * the word boundaries inside them. Geometry goes through an injectable
 * LayoutProvider: real pages use getBoundingClientRect and DOM ranges, while
 * layout-free documents (tests, prerendering) can plug in a deterministic
 * provider. The engine validates maps strictly, so this builder guarantees
 * unique ids, parented words inside their block, and no same-granularity
 * overlaps (topmost region wins when painted rects collide).
 */

import type { RegionWire, TargetMapWire } from "./wire.js";

export interface RectLike {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface WordBox {
  text: string;
  rect: RectLike;
}

export interface LayoutProvider {
  /** Viewport rect of a block element, or null when it takes no space. */
  blockRect(el: Element): RectLike | null;
  /** Rects of the words inside a block, in reading order. */
  wordBoxes(el: Element): WordBox[];
}

export interface BuildOptions {
  viewport?: { w: number; h: number };
  /** Recorded on every region; defaults to the document URL. */
  sourceUrl?: string;
  layout?: LayoutProvider;
  blockSelector?: string;
  /** Set false to snapshot blocks only. */
  withWords?: boolean;
}

export const BLOCK_SELECTOR =
  "p, h1, h2, h3, h4, h5, h6, li, blockquote, pre, figure, img, table";

const DEFAULT_VIEWPORT = { w: 1280, h: 800 };

function normalizeText(text: string | null): string {
  return (text ?? "").replace(/\s+/g, " ").trim();
}

function overlaps(a: RectLike, b: RectLike): boolean {
  // Shared edges do not count, matching the engine's rule.
  return a.x < b.x + b.w && b.x < a.x + a.w && a.y < b.y + b.h && b.y < a.y + a.h;
}

function contains(outer: RectLike, inner: RectLike): boolean {
  return (
    outer.x <= inner.x &&
    outer.y <= inner.y &&
    inner.x + inner.w <= outer.x + outer.w &&
    inner.y + inner.h <= outer.y + outer.h
  );
}

/** Measure through the browser's own layout engine. */
export function domLayoutProvider(): LayoutProvider {
  return {
    blockRect(el: Element): RectLike | null {
      const rect = el.getBoundingClientRect();
      if (rect.width <= 0 || rect.height <= 0) return null;
      return { x: rect.x, y: rect.y, w: rect.width, h: rect.height };
    },
    wordBoxes(el: Element): WordBox[] {
      const doc = el.ownerDocument;
      const boxes: WordBox[] = [];
      const walker = doc.createTreeWalker(el, 4 /* NodeFilter.SHOW_TEXT */);
      let node: Node | null;
      while ((node = walker.nextNode())) {
        const content = node.textContent ?? "";
        const pattern = /\S+/g;
        let match: RegExpExecArray | null;
        while ((match = pattern.exec(content))) {
          const range = doc.createRange();
          range.setStart(node, match.index);
          range.setEnd(node, match.index + match[0].length);
          const rect = range.getBoundingClientRect();
          if (rect.width <= 0 || rect.height <= 0) continue;
          boxes.push({
            text: match[0],
            rect: { x: rect.x, y: rect.y, w: rect.width, h: rect.height },
          });
        }
      }
      return boxes;
    },
  };
}

export interface StackedLayoutOptions {
  viewport?: { w: number; h: number };
  marginX?: number;
  gapY?: number;
  startY?: number;
  charWidth?: number;
  wordGap?: number;
  lineHeight?: number;
  paddingX?: number;
  paddingY?: number;
  imageHeight?: number;
}

/**
 * Deterministic single-column layout for documents without a layout engine.
 *
 * Blocks stack top to bottom in the order they are first measured; words
 * flow left to right at a fixed character width and wrap inside the block.
 * Rects are cached per element so blockRect and wordBoxes always agree.
 */
export function stackedLayoutProvider(
  options: StackedLayoutOptions = {},
): LayoutProvider {
  const viewport = options.viewport ?? DEFAULT_VIEWPORT;
  const marginX = options.marginX ?? 64;
  const gapY = options.gapY ?? 16;
  const charWidth = options.charWidth ?? 8;
  const wordGap = options.wordGap ?? 8;
  const lineHeight = options.lineHeight ?? 24;
  const paddingX = options.paddingX ?? 8;
  const paddingY = options.paddingY ?? 4;
  const imageHeight = options.imageHeight ?? 200;

  let cursorY = options.startY ?? 16;
  const blockWidth = viewport.w - 2 * marginX;
  const measured = new Map<Element, { rect: RectLike; words: WordBox[] }>();

  function measure(el: Element): { rect: RectLike; words: WordBox[] } {
    const cached = measured.get(el);
    if (cached) return cached;

    const rect: RectLike = { x: marginX, y: cursorY, w: blockWidth, h: 0 };
    const words: WordBox[] = [];
    const tokens =
      el.tagName.toLowerCase() === "img" ? [] : normalizeText(el.textContent).split(" ");
    let lineX = rect.x + paddingX;
    let lineY = rect.y + paddingY;
    for (const token of tokens) {
      if (!token) continue;
      const width = token.length * charWidth;
      if (lineX + width > rect.x + rect.w - paddingX && lineX > rect.x + paddingX) {
        lineX = rect.x + paddingX;
        lineY += lineHeight;
      }
      words.push({
        text: token,
        rect: { x: lineX, y: lineY, w: width, h: lineHeight - 4 },
      });
      lineX += width + wordGap;
    }
    rect.h = words.length
      ? lineY + lineHeight - rect.y + paddingY
      : el.tagName.toLowerCase() === "img"
        ? imageHeight
        : lineHeight + 2 * paddingY;

    cursorY = rect.y + rect.h + gapY;
    const entry = { rect, words };
    measured.set(el, entry);
    return entry;
  }

  return {
    blockRect: (el) => measure(el).rect,
    wordBoxes: (el) => measure(el).words,
  };
}

/** Snapshot the collectible regions of a document. */
export function buildTargetMap(
  doc: Document,
  options: BuildOptions = {},
): TargetMapWire {
  const layout = options.layout ?? domLayoutProvider();
  const selector = options.blockSelector ?? BLOCK_SELECTOR;
  const withWords = options.withWords ?? true;
  const view = doc.defaultView;
  const viewport =
    options.viewport ??
    (view && view.innerWidth > 0 && view.innerHeight > 0
      ? { w: view.innerWidth, h: view.innerHeight }
      : DEFAULT_VIEWPORT);
  const sourceUrl = options.sourceUrl ?? doc.location?.href ?? "";

  interface BlockEntry {
    region: RegionWire;
    el: Element;
    rect: RectLike;
  }

  const blocks: BlockEntry[] = [];
  let blockCounter = 0;
  for (const el of Array.from(doc.querySelectorAll(selector))) {
    // Nested candidates (a figure's img, a blockquote's p) would overlap
    // their container; keep the outermost element only.
    const parent = el.parentElement?.closest(selector);
    if (parent) continue;
    const rect = layout.blockRect(el);
    if (!rect) continue;
    // Later elements paint on top; they evict any earlier block they cover.
    for (let i = blocks.length - 1; i >= 0; i--) {
      if (overlaps(blocks[i]!.rect, rect)) blocks.splice(i, 1);
    }
    const id = el.id || `b${blockCounter}`;
    blockCounter += 1;
    blocks.push({
      el,
      rect,
      region: {
        id,
        rect: [rect.x, rect.y, rect.w, rect.h],
        granularity: "block",
        text: normalizeText(el.textContent),
        sourceUrl,
      },
    });
  }

  const regions: RegionWire[] = blocks.map((b) => b.region);
  if (withWords) {
    let wordCounter = 0;
    const keptWordRects: RectLike[] = [];
    for (const block of blocks) {
      if (block.el.tagName.toLowerCase() === "img") continue;
      for (const word of layout.wordBoxes(block.el)) {
        // The engine rejects escaped or overlapping words outright; drop the
        // stray rect (sub-pixel overhang, kerned live layout) instead of
        // failing the whole upload.
        if (!contains(block.rect, word.rect)) continue;
        if (keptWordRects.some((kept) => overlaps(kept, word.rect))) continue;
        keptWordRects.push(word.rect);
        regions.push({
          id: `w${wordCounter}`,
          rect: [word.rect.x, word.rect.y, word.rect.w, word.rect.h],
          granularity: "word",
          parentId: block.region.id,
          text: word.text,
          sourceUrl,
        });
        wordCounter += 1;
      }
    }
  }

  return { viewport, regions };
}
