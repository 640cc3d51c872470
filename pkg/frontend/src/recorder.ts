/**
 * Session recording: capture the exact inputs and outputs of a live session
 * so it can be replayed offline through the engine's command-line harness.
 *
 * The exported trace and target map are byte-compatible with the replay
 * tool's file formats, which closes the loop between live use and tests:
 * replaying a recording must reproduce the same commits the session saw.
 */

import type {
  CommittedPayload,
  EventEnvelope,
  SampleWire,
  TargetMapWire,
} from "./wire.js";
import { commitsOf, targetMapToJson, traceToJsonLines } from "./wire.js";

export class SessionRecorder {
  private samples: SampleWire[] = [];
  private envelopes: EventEnvelope[] = [];
  private targets: TargetMapWire | null = null;

  recordSample(sample: SampleWire): void {
    this.samples.push(sample);
  }

  recordEvents(envelopes: EventEnvelope[]): void {
    this.envelopes.push(...envelopes);
  }

  setTargets(map: TargetMapWire): void {
    this.targets = map;
  }

  sampleCount(): number {
    return this.samples.length;
  }

  /** The session's pointer stream in the engine's trace file format. */
  traceJsonLines(): string {
    return traceToJsonLines(this.samples);
  }

  /** The target map the session ran against, in the map file format. */
  targetsJson(): string {
    if (!this.targets) throw new Error("no target map recorded");
    return targetMapToJson(this.targets);
  }

  /** Every event envelope the session received, as JSON lines. */
  eventsJsonLines(): string {
    return this.envelopes.map((e) => JSON.stringify(e) + "\n").join("");
  }

  /** Commits observed live, in order. */
  commits(): CommittedPayload[] {
    return commitsOf(this.envelopes);
  }

  clear(): void {
    this.samples = [];
    this.envelopes = [];
    this.targets = null;
  }
}
