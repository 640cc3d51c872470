/**
 * Shared plumbing for bridge-backed tests: spawning the HTTP bridge,
 * replaying a recorded trace through the command line runner, and the
 * scripted gesture geometry the smoke test drives.
 */

import { execFileSync, spawn } from "node:child_process";

import type { TargetMapWire } from "../src/wire.js";

const PYTHON = process.env.WIGGLE_PYTHON ?? "python3";

export function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

export interface BridgeHandle {
  baseUrl: string;
  stop(): Promise<void>;
}

/** Boot the HTTP bridge on a test-local port and wait until /health answers. */
export async function startBridge(): Promise<BridgeHandle> {
  const port = 8700 + (process.pid % 1000);
  const baseUrl = `http://127.0.0.1:${port}`;
  const proc = spawn(
    PYTHON,
    ["-m", "wigglekit.cli", "serve", "--host", "127.0.0.1", "--port", String(port)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  let output = "";
  proc.stdout?.on("data", (chunk: Buffer) => {
    output += chunk.toString();
  });
  proc.stderr?.on("data", (chunk: Buffer) => {
    output += chunk.toString();
  });

  const deadline = Date.now() + 30_000;
  for (;;) {
    if (proc.exitCode !== null) {
      throw new Error(`bridge exited with ${proc.exitCode} before serving:\n${output}`);
    }
    try {
      const response = await fetch(`${baseUrl}/health`);
      if (response.ok) break;
    } catch {
      // not listening yet
    }
    if (Date.now() > deadline) {
      proc.kill("SIGKILL");
      throw new Error(`bridge did not come up within 30s:\n${output}`);
    }
    await sleep(150);
  }

  return {
    baseUrl,
    stop: () =>
      new Promise<void>((resolve) => {
        if (proc.exitCode !== null) {
          resolve();
          return;
        }
        proc.once("exit", () => resolve());
        proc.kill("SIGTERM");
        setTimeout(() => proc.kill("SIGKILL"), 3000);
      }),
  };
}

/** Replay a recorded trace through the command line runner; returns stdout. */
export function replayTrace(
  traceFile: string,
  targetsFile: string,
  logFile: string,
): string {
  return execFileSync(
    PYTHON,
    [
      "-m",
      "wigglekit.cli",
      "run",
      "--trace",
      traceFile,
      "--targets",
      targetsFile,
      "--log",
      logFile,
    ],
    { encoding: "utf8", timeout: 30_000 },
  );
}

/**
 * Horizontal strokes alternating 60px around a center: eight reversals,
 * comfortably past the activation threshold of five. The surplus means the
 * gesture still activates even if a slow assertion between the first point
 * and the rest lets the engine close that point as a stale episode, and in
 * both timings the stroke centroid stays exactly on the center, so any
 * following swipe classifies identically.
 */
export function wigglePoints(cx: number, cy: number): [number, number][] {
  const offsets = [0, 60, -60, 60, -60, 60, -60, 60, -60];
  return offsets.map((dx) => [cx + dx, cy]);
}

/** Swipe right of the wiggle center; ends 200px out along the same row. */
export function rightSwipePoints(cx: number, cy: number): [number, number][] {
  return [
    [cx + 40, cy],
    [cx + 120, cy],
    [cx + 200, cy],
  ];
}

/** Swipe straight up from the wiggle center by `rise` pixels. */
export function upSwipePoints(
  cx: number,
  cy: number,
  rise: number,
): [number, number][] {
  return [
    [cx, cy - 40],
    [cx, cy - 80],
    [cx, cy - rise],
  ];
}

/** Center of a region's rect, for anchoring a scripted gesture. */
export function regionCenter(map: TargetMapWire, id: string): [number, number] {
  const region = map.regions.find((r) => r.id === id);
  if (!region) throw new Error(`no region ${id} in the target map`);
  const [x, y, w, h] = region.rect;
  return [x + w / 2, y + h / 2];
}
