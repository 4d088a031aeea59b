import type { StatusPayload } from "./types.js";

export type SourceLevel = "ok" | "warn" | "missing";

export const SOURCES = ["beacon", "gps", "env", "weather"] as const;

export interface StatusView {
  offline: boolean;
  sessionOpen: boolean;
  sessionId: string | null;
  sources: Record<string, { level: SourceLevel; ageMs: number | null }>;
  nearestBeacon: string | null;
  queueDepth: number;
  queueFailed: number;
}

/** null payload means the service itself was unreachable: global offline banner. */
export function classifyStatus(payload: StatusPayload | null): StatusView {
  if (payload === null) {
    const sources: StatusView["sources"] = {};
    for (const s of SOURCES) {
      sources[s] = { level: "missing", ageMs: null };
    }
    return {
      offline: true,
      sessionOpen: false,
      sessionId: null,
      sources,
      nearestBeacon: null,
      queueDepth: 0,
      queueFailed: 0,
    };
  }
  const sources: StatusView["sources"] = {};
  for (const s of SOURCES) {
    const age = payload.source_ages_ms[s] ?? null;
    let level: SourceLevel;
    if (age === null) {
      level = "missing";
    } else if (age > payload.freshness_window_ms) {
      level = "warn"; // stale: would be dropped from the next snapshot
    } else {
      level = "ok";
    }
    sources[s] = { level, ageMs: age };
  }
  return {
    offline: false,
    sessionOpen: payload.session !== null,
    sessionId: payload.session?.session_id ?? null,
    sources,
    nearestBeacon: payload.nearest_beacon,
    queueDepth: payload.queue_depth,
    queueFailed: payload.queue_failed,
  };
}
