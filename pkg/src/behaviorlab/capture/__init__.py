"""Click capture, session lifecycle, local log, and the sync queue."""

from .api import create_capture_app, registry_payload
from .service import CaptureService, Session, SessionStateError, UnknownSessionError
from .sync import ACKED, FAILED, PENDING, SyncQueue, SyncQueueEntry
