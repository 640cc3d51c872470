/**
 * Wire formats shared with the recognition engine and its HTTP bridge.
 *
 * The UI never interprets gestures itself; it forwards pointer samples and
 * consumes the engine's event envelopes, so these shapes are the whole
 * contract. Traces and event logs are JSON lines, one object per line.
 */

export type SamplePhase = "move" | "contact-start" | "contact-end";
export type PointerKind = "mouse" | "touch";

/** One pointer sample. `t` is milliseconds, non-negative integer. */
export interface SampleWire {
  t: number;
  x: number;
  y: number;
  phase: SamplePhase;
  kind: PointerKind;
}

export type GranularityWire = "word" | "block";
export type SwipeDirectionWire = "left" | "right" | "up" | "down";
export type PriorityLevelWire = "low" | "normal" | "high" | "urgent";

/** How a commit was annotated: a signed rating, a priority, or nothing. */
export type EncodingWire =
  | { kind: "valence"; score: number }
  | { kind: "priority"; level: PriorityLevelWire }
  | null;

export interface RegionWire {
  id: string;
  /** [x, y, w, h] in viewport coordinates. */
  rect: [number, number, number, number];
  granularity: GranularityWire;
  parentId?: string;
  text: string;
  sourceUrl: string;
}

export interface TargetMapWire {
  viewport: { w: number; h: number };
  regions: RegionWire[];
}

export interface TrackingProgressPayload {
  reversals: number;
  candidateTargetId: string | null;
  granularity: GranularityWire | null;
}

export interface ActivatedPayload {
  targetId: string;
  granularity: GranularityWire;
  wiggleCenter: [number, number];
}

export interface ExtensionUpdatedPayload {
  direction: SwipeDirectionWire;
  fractionOfAvailable: number;
}

export interface CommittedPayload {
  targetIds: string[];
  encoding: EncodingWire;
}

export interface AbortedPayload {
  reason: string;
}

interface EnvelopeBase {
  seq: number;
  sampleIndex: number;
}

export type EventEnvelope =
  | (EnvelopeBase & { type: "TrackingProgress"; payload: TrackingProgressPayload })
  | (EnvelopeBase & { type: "Activated"; payload: ActivatedPayload })
  | (EnvelopeBase & { type: "ExtensionUpdated"; payload: ExtensionUpdatedPayload })
  | (EnvelopeBase & { type: "Committed"; payload: CommittedPayload })
  | (EnvelopeBase & { type: "Aborted"; payload: AbortedPayload })
  | (EnvelopeBase & { type: "PassThrough"; payload: Record<string, never> });

export interface ClipWire {
  id: string;
  parts: [string, string][];
  valence: number | null;
  topicId: string | null;
  provenance: string;
  createdAt: number;
  notes: string;
  state: "active" | "trashed" | "archived";
}

export interface TopicWire {
  id: string;
  title: string;
  priority: PriorityLevelWire;
  clipIds: string[];
  createdAt: number;
}

/** Engine configuration; keys mirror the bridge's config JSON. */
export interface ConfigWire {
  mode?: "desktop" | "mobile";
  activation_reversals?: number;
  word_extent_px?: number;
  jitter_eps_px?: number;
  idle_timeout_ms?: number;
  swipe_min_px?: number;
  edge_fraction?: number;
  resample_n?: number;
  viewport?: { w: number; h: number };
}

export interface SessionStateWire {
  phase: "idle" | "tracking" | "activated" | "extending" | "committed" | "aborted";
  reversalCount: number;
  wiggleCenter: [number, number] | null;
  candidateTarget: string | null;
  pendingGranularity: GranularityWire | null;
  pendingTargetIds: string[];
}

export interface TankQueryWire {
  enabledFilters?: string[];
  sortKey?: "valenceDesc" | "temporal";
  focusThreshold?: number;
}

/** Serialize samples as the engine's trace file format (JSON lines). */
export function traceToJsonLines(samples: SampleWire[]): string {
  return samples
    .map((s) =>
      JSON.stringify({ t: s.t, x: s.x, y: s.y, phase: s.phase, kind: s.kind }) + "\n",
    )
    .join("");
}

/** Serialize a target map as the engine's pretty-printed map file format. */
export function targetMapToJson(map: TargetMapWire): string {
  return JSON.stringify(map, null, 2) + "\n";
}

/** Parse an event log (JSON lines) back into envelopes; blank lines skipped. */
export function parseEventLines(text: string): EventEnvelope[] {
  const envelopes: EventEnvelope[] = [];
  for (const line of text.split("\n")) {
    if (!line.trim()) continue;
    envelopes.push(JSON.parse(line) as EventEnvelope);
  }
  return envelopes;
}

/** The committed collections of an event stream, in order. */
export function commitsOf(envelopes: EventEnvelope[]): CommittedPayload[] {
  const commits: CommittedPayload[] = [];
  for (const envelope of envelopes) {
    if (envelope.type === "Committed") commits.push(envelope.payload);
  }
  return commits;
}

/** Canonical string for one commit, independent of JSON key order. */
export function commitKey(commit: CommittedPayload): string {
  const encoding =
    commit.encoding === null
      ? "bare"
      : commit.encoding.kind === "valence"
        ? `valence:${commit.encoding.score}`
        : `priority:${commit.encoding.level}`;
  return `${commit.targetIds.join("+")}|${encoding}`;
}

/** True when two commit streams carry the same collections in the same order. */
export function sameCommitSequence(a: CommittedPayload[], b: CommittedPayload[]): boolean {
  if (a.length !== b.length) return false;
  return a.every((commit, i) => commitKey(commit) === commitKey(b[i]!));
}
