import type { ClickResponse } from "./types.js";

export const DEBOUNCE_MS = 300;

/** Accepts the first tap per button and swallows repeats inside the window. */
export class TapGate {
  private lastAccepted = new Map<string, number>();

  constructor(private windowMs: number = DEBOUNCE_MS) {}

  accept(buttonKey: string, nowMs: number): boolean {
    const last = this.lastAccepted.get(buttonKey);
    if (last !== undefined && nowMs - last < this.windowMs) {
      return false;
    }
    this.lastAccepted.set(buttonKey, nowMs);
    return true;
  }
}

const SOURCE_OF_PREFIX: Array<[RegExp, string]> = [
  [/^iB/, "beacon"],
  [/^GPS/, "gps"],
  [/^S\d/, "env"],
  [/^A\d/, "weather"],
];

export function degradedSources(errorSlots: string[]): string[] {
  const out: string[] = [];
  for (const [pattern, source] of SOURCE_OF_PREFIX) {
    if (errorSlots.some((slot) => pattern.test(slot)) && !out.includes(source)) {
      out.push(source);
    }
  }
  return out;
}

export interface ClickBadge {
  eventId: string;
  label: string; // e.g. "31/31"
  pending: boolean;
  degraded: string[]; // sources with error slots in this record
}

export function badgeFor(ack: ClickResponse): ClickBadge {
  return {
    eventId: ack.event_id,
    label: `${ack.slots_present}/${ack.slots_total}`,
    pending: ack.sync_state === "pending",
    degraded: degradedSources(ack.error_slots),
  };
}

/** Clears pending flags for events the service no longer reports as queued. */
export function reconcilePending(badges: ClickBadge[], pendingEventIds: string[]): ClickBadge[] {
  const stillPending = new Set(pendingEventIds);
  return badges.map((b) =>
    b.pending && !stillPending.has(b.eventId) ? { ...b, pending: false } : b,
  );
}
