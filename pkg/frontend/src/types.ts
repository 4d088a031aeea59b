export interface BehaviorRow {
  category_code: number;
  behavior_name: string;
  category_name: string;
}

export interface RegistryPayload {
  revision: number;
  definitions: BehaviorRow[];
}

export interface SessionPayload {
  session_id: string;
  started_at: number;
  ended_at: number | null;
  registry_revision: number;
  location_label: string | null;
}

export interface ClickResponse {
  event_id: string;
  session_id: string;
  behavior_name: string;
  category_name: string;
  clicked_at: number;
  slots_present: number;
  slots_total: number;
  error_slots: string[];
  sync_state: "pending" | "acked";
}

export interface StatusPayload {
  now: number;
  session: { session_id: string; started_at: number } | null;
  freshness_window_ms: number;
  source_ages_ms: Record<string, number | null>;
  nearest_beacon: string | null;
  queue_depth: number;
  queue_failed: number;
  queue_acked: number;
  pending_event_ids: string[];
}

export interface FieldError {
  error: string;
  field?: string;
  row?: number;
}
