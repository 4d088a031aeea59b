import type {
  BehaviorRow,
  ClickResponse,
  FieldError,
  RegistryPayload,
  SessionPayload,
  StatusPayload,
} from "./types.js";

/** The service rejected the request; carries the field diagnostics it sent. */
export class ApiError extends Error {
  constructor(public status: number, public body: FieldError) {
    super(body.error ?? `request failed with ${status}`);
  }
}

/** Transport failure: the capture service is unreachable. */
export class OfflineError extends Error {
  constructor(cause: unknown) {
    super(`capture service unreachable: ${String(cause)}`);
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  let resp: Response;
  try {
    resp = await fetch(url, init);
  } catch (err) {
    throw new OfflineError(err);
  }
  const text = await resp.text();
  const body = text ? JSON.parse(text) : {};
  if (!resp.ok) {
    throw new ApiError(resp.status, body as FieldError);
  }
  return body as T;
}

export class CaptureApi {
  constructor(private baseUrl: string = "") {}

  getRegistry(): Promise<RegistryPayload> {
    return request(`${this.baseUrl}/registry`);
  }

  putRegistry(definitions: BehaviorRow[]): Promise<RegistryPayload> {
    return request(`${this.baseUrl}/registry`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ definitions }),
    });
  }

  startSession(locationLabel?: string): Promise<SessionPayload> {
    return request(`${this.baseUrl}/sessions/start`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(locationLabel ? { location_label: locationLabel } : {}),
    });
  }

  endSession(): Promise<SessionPayload> {
    return request(`${this.baseUrl}/sessions/end`, { method: "POST" });
  }

  click(behaviorName: string, categoryName: string): Promise<ClickResponse> {
    return request(`${this.baseUrl}/clicks`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ behavior_name: behaviorName, category_name: categoryName }),
    });
  }

  status(): Promise<StatusPayload> {
    return request(`${this.baseUrl}/status`);
  }
}
