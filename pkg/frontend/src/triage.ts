/**
 * File committed collections into the triage store over the bridge.
 *
 * A commit carries target ids and an optional encoding; the captured page
 * text comes from the target map snapshot. Priority commits become titled
 * topics (the store's rule), everything else becomes a clip.
 */

import type { BridgeClient } from "./apiClient.js";
import type { CommittedPayload, TargetMapWire } from "./wire.js";

export interface FiledRef {
  kind: "clip" | "topic";
  id: string;
}

/** (region id, captured text) pairs for the commit's targets, in order. */
export function partsForCommit(
  map: TargetMapWire,
  targetIds: string[],
): [string, string][] {
  const byId = new Map(map.regions.map((r) => [r.id, r]));
  return targetIds.map((id) => [id, byId.get(id)?.text ?? ""]);
}

/** Source host of the first target's page, mirroring the offline triage tool. */
export function provenanceOf(map: TargetMapWire, targetIds: string[]): string {
  const byId = new Map(map.regions.map((r) => [r.id, r]));
  for (const id of targetIds) {
    const url = byId.get(id)?.sourceUrl;
    if (!url) continue;
    try {
      return new URL(url).hostname;
    } catch {
      return url;
    }
  }
  return "";
}

export async function fileCommit(
  client: BridgeClient,
  map: TargetMapWire,
  commit: CommittedPayload,
  now: number,
): Promise<FiledRef> {
  const id = await client.addClip({
    parts: partsForCommit(map, commit.targetIds),
    encoding: commit.encoding,
    provenance: provenanceOf(map, commit.targetIds),
    now,
  });
  const kind =
    commit.encoding !== null && commit.encoding.kind === "priority"
      ? "topic"
      : "clip";
  return { kind, id };
}
