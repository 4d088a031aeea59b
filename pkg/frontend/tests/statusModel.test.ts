import { describe, expect, it } from "vitest";

import { classifyStatus } from "../src/statusModel.js";
import type { StatusPayload } from "../src/types.js";

function status(overrides: Partial<StatusPayload> = {}): StatusPayload {
  return {
    now: 100_000,
    session: { session_id: "s1", started_at: 50_000 },
    freshness_window_ms: 30_000,
    source_ages_ms: { beacon: 1_000, gps: 900, env: 1_200, weather: 2_000 },
    nearest_beacon: "iB-room-00",
    queue_depth: 0,
    queue_failed: 0,
    queue_acked: 4,
    pending_event_ids: [],
    ...overrides,
  };
}

describe("classifyStatus", () => {
  it("all fresh sources show ok", () => {
    const view = classifyStatus(status());
    expect(Object.values(view.sources).map((s) => s.level)).toEqual(["ok", "ok", "ok", "ok"]);
    expect(view.offline).toBe(false);
    expect(view.sessionOpen).toBe(true);
    expect(view.nearestBeacon).toBe("iB-room-00");
  });

  it("a source beyond the freshness window warns", () => {
    const view = classifyStatus(
      status({ source_ages_ms: { beacon: 60_000, gps: 900, env: 1_200, weather: 2_000 } }),
    );
    expect(view.sources.beacon.level).toBe("warn");
    expect(view.sources.gps.level).toBe("ok");
  });

  it("age exactly at the window still counts as fresh", () => {
    const view = classifyStatus(
      status({ source_ages_ms: { beacon: 30_000, gps: 900, env: 1_200, weather: 2_000 } }),
    );
    expect(view.sources.beacon.level).toBe("ok");
  });

  it("a source that never delivered is missing", () => {
    const view = classifyStatus(
      status({ source_ages_ms: { beacon: null, gps: 900, env: 1_200, weather: 2_000 } }),
    );
    expect(view.sources.beacon.level).toBe("missing");
  });

  it("unreachable service raises the offline banner", () => {
    const view = classifyStatus(null);
    expect(view.offline).toBe(true);
    expect(view.sessionOpen).toBe(false);
    expect(Object.values(view.sources).every((s) => s.level === "missing")).toBe(true);
  });

  it("reports queue depth for the pending-badge flow", () => {
    const view = classifyStatus(status({ queue_depth: 3, queue_failed: 1 }));
    expect(view.queueDepth).toBe(3);
    expect(view.queueFailed).toBe(1);
  });
});
