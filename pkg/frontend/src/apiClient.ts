/**
 * Thin typed client for the recognition engine's HTTP bridge.
 *
 * Every method maps to one endpoint; no gesture or triage logic lives here.
 * `fetchFn` is injectable so tests can run against a recorded transport.
 */

import type {
  ClipWire,
  ConfigWire,
  EncodingWire,
  EventEnvelope,
  SampleWire,
  SessionStateWire,
  TankQueryWire,
  TargetMapWire,
  TopicWire,
} from "./wire.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class BridgeError extends Error {
  constructor(
    public readonly status: number,
    public readonly detail: string,
  ) {
    super(`bridge request failed (${status}): ${detail}`);
    this.name = "BridgeError";
  }
}

export interface NewClip {
  parts: [string, string][];
  encoding: EncodingWire;
  provenance: string;
  now: number;
}

export class BridgeClient {
  private readonly fetchFn: FetchLike;

  constructor(
    private readonly baseUrl: string,
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((url, init) => fetch(url, init));
  }

  private async request(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<unknown> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    const isJson = (response.headers.get("content-type") ?? "").includes("json");
    if (!response.ok) {
      let detail = response.statusText;
      if (isJson) {
        const data = (await response.json()) as { detail?: unknown };
        detail = typeof data.detail === "string" ? data.detail : JSON.stringify(data);
      } else {
        detail = await response.text();
      }
      throw new BridgeError(response.status, detail);
    }
    return isJson ? response.json() : response.text();
  }

  async health(): Promise<boolean> {
    const data = (await this.request("GET", "/health")) as { ok: boolean };
    return data.ok;
  }

  async defaults(): Promise<Required<ConfigWire>> {
    return (await this.request("GET", "/defaults")) as Required<ConfigWire>;
  }

  // -- recognizer sessions ---------------------------------------------------

  async createSession(
    config?: ConfigWire,
  ): Promise<{ sessionId: string; config: Required<ConfigWire> }> {
    const body = config ? { config } : {};
    return (await this.request("POST", "/sessions", body)) as {
      sessionId: string;
      config: Required<ConfigWire>;
    };
  }

  async setTargets(sessionId: string, map: TargetMapWire): Promise<number> {
    const data = (await this.request(
      "POST",
      `/sessions/${sessionId}/targets`,
      map,
    )) as { regions: number };
    return data.regions;
  }

  async feed(
    sessionId: string,
    samples: SampleWire[],
    targets?: TargetMapWire,
  ): Promise<EventEnvelope[]> {
    const body: { samples: SampleWire[]; targets?: TargetMapWire } = { samples };
    if (targets) body.targets = targets;
    const data = (await this.request(
      "POST",
      `/sessions/${sessionId}/feed`,
      body,
    )) as { events: EventEnvelope[] };
    return data.events;
  }

  async tick(sessionId: string, nowMs: number): Promise<EventEnvelope[]> {
    const data = (await this.request("POST", `/sessions/${sessionId}/tick`, {
      nowMs,
    })) as { events: EventEnvelope[] };
    return data.events;
  }

  async state(sessionId: string): Promise<SessionStateWire> {
    return (await this.request(
      "GET",
      `/sessions/${sessionId}/state`,
    )) as SessionStateWire;
  }

  async resetSession(sessionId: string): Promise<void> {
    await this.request("POST", `/sessions/${sessionId}/reset`, {});
  }

  async deleteSession(sessionId: string): Promise<void> {
    await this.request("DELETE", `/sessions/${sessionId}`);
  }

  // -- triage store ------------------------------------------------------------

  async store(): Promise<{ clips: ClipWire[]; topics: TopicWire[] }> {
    return (await this.request("GET", "/store")) as {
      clips: ClipWire[];
      topics: TopicWire[];
    };
  }

  async storeFilters(): Promise<string[]> {
    const data = (await this.request("GET", "/store/filters")) as {
      filters: string[];
    };
    return data.filters;
  }

  /** File one commit; returns the new clip id (or topic id for priorities). */
  async addClip(clip: NewClip): Promise<string> {
    const data = (await this.request("POST", "/store/clips", clip)) as {
      id: string;
    };
    return data.id;
  }

  async setValence(
    clipId: string,
    valence: number | null,
    now?: number,
  ): Promise<ClipWire> {
    return (await this.request("POST", `/store/clips/${clipId}/valence`, {
      valence,
      now,
    })) as ClipWire;
  }

  async setNotes(clipId: string, notes: string, now?: number): Promise<ClipWire> {
    return (await this.request("POST", `/store/clips/${clipId}/notes`, {
      notes,
      now,
    })) as ClipWire;
  }

  async assignTopic(
    clipId: string,
    topicId: string,
    now?: number,
  ): Promise<ClipWire> {
    return (await this.request("POST", `/store/clips/${clipId}/assign`, {
      topicId,
      now,
    })) as ClipWire;
  }

  async undo(now: number): Promise<void> {
    await this.request("POST", "/store/undo", { now });
  }

  async query(
    query: TankQueryWire,
  ): Promise<{ main: ClipWire[]; belowFocus: ClipWire[] }> {
    return (await this.request("POST", "/store/query", query)) as {
      main: ClipWire[];
      belowFocus: ClipWire[];
    };
  }

  async batchTrash(query: TankQueryWire & { now?: number }): Promise<number> {
    const data = (await this.request("POST", "/store/batch-trash", query)) as {
      trashed: number;
    };
    return data.trashed;
  }

  async topics(): Promise<TopicWire[]> {
    const data = (await this.request("GET", "/store/topics")) as {
      topics: TopicWire[];
    };
    return data.topics;
  }

  async topicMarkdown(topicId: string): Promise<string> {
    return (await this.request(
      "GET",
      `/store/topics/${topicId}/markdown`,
    )) as string;
  }
}
