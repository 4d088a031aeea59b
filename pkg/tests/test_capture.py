import pytest

from behaviorlab.capture.service import CaptureService, SessionStateError, UnknownSessionError
from behaviorlab.capture.sync import ACKED, FAILED, SyncQueue
from behaviorlab.fixtures.build import default_registry
from behaviorlab.model.behaviors import UnknownBehaviorError
from behaviorlab.model.readings import GpsFix
from behaviorlab.sensors.snapshot import SensorHub
from behaviorlab.store.api import InProcessStoreClient
from behaviorlab.store.service import RecordRejectedError, RecordStore

from conftest import FlakyStoreClient, ManualClock, make_beacon, make_env, make_weather


def fresh_hub(clock: ManualClock) -> SensorHub:
    hub = SensorHub()
    t = clock()
    hub.offer_beacons([make_beacon(observed_at=t)])
    hub.offer_gps(GpsFix(34.79, 132.78, observed_at=t))
    hub.offer_env(make_env(t))
    hub.offer_weather(make_weather(t))
    return hub


def service_with(clock, client=None, store=None, **kwargs) -> CaptureService:
    store = store or RecordStore()
    client = client or InProcessStoreClient(store)
    svc = CaptureService(
        registry=default_registry(),
        hub=fresh_hub(clock),
        store_client=client,
        clock=clock,
        sync_sleep=lambda s: None,
        **kwargs,
    )
    svc._test_store = store
    return svc


def test_one_open_session_per_device(clock):
    svc = service_with(clock)
    svc.start_session()
    with pytest.raises(SessionStateError):
        svc.start_session()


def test_start_end_start_yields_distinct_ids(clock):
    svc = service_with(clock)
    first = svc.start_session()
    svc.end_session()
    second = svc.start_session()
    assert first.session_id != second.session_id


def test_full_click_path_records_and_syncs(clock):
    svc = service_with(clock)
    svc.start_session()
    record = svc.record_behavior("Goodbye")
    assert record.n_values == 31
    assert record.behavior_name == "Goodbye"
    assert record.category_name == "Social"
    assert svc.drain_sync_queue() == 1
    assert svc._test_store.count() == 1
    assert svc.queue.counts()[ACKED] == 1


def test_unknown_behavior_rejected_and_nothing_logged(clock):
    svc = service_with(clock)
    session = svc.start_session()
    with pytest.raises(UnknownBehaviorError):
        svc.record_behavior("Backflip")
    assert svc.session_records(session.session_id) == []
    assert svc.queue.depth() == 0


def test_closed_session_rejects_clicks(clock):
    svc = service_with(clock)
    svc.start_session()
    svc.end_session()
    with pytest.raises(SessionStateError):
        svc.record_behavior("Hungry")


def test_click_with_store_down_stays_local_then_syncs_once(clock):
    store = RecordStore()
    client = FlakyStoreClient(store, failures=0)
    svc = service_with(clock, client=client, store=store, sync_max_attempts=5)
    session = svc.start_session()
    client.down = True
    svc.record_behavior("Hungry")
    assert len(svc.session_records(session.session_id)) == 1
    assert svc.drain_sync_queue(max_rounds_per_entry=1) == 0
    assert svc.queue.depth() == 1
    assert store.count() == 0

    client.down = False
    assert svc.drain_sync_queue() == 1
    assert store.count() == 1
    # replaying the drain is a no-op; replaying the payload itself dedups
    assert svc.drain_sync_queue() == 0
    entry = svc.queue.entries()[0]
    assert store.put_record(entry.record) == entry.ack
    assert store.count() == 1


def test_event_ids_unique_across_sessions(clock):
    svc = service_with(clock)
    svc.start_session()
    a = svc.record_behavior("Hungry")
    svc.end_session()
    svc.start_session()
    b = svc.record_behavior("Hungry")
    assert a.event_id != b.event_id


def test_clicked_at_non_decreasing_even_if_clock_jumps_back(clock):
    svc = service_with(clock)
    session = svc.start_session()
    clock.advance(10_000)
    svc.record_behavior("Hungry")
    clock.t -= 7_000
    svc.record_behavior("Thirsty")
    times = [r.clicked_at for r in svc.session_records(session.session_id)]
    assert times == sorted(times)


def test_session_times_bound_events(clock):
    svc = service_with(clock)
    session = svc.start_session()
    clock.advance(5_000)
    svc.record_behavior("Hungry")
    closed = svc.end_session()
    for r in svc.session_records(session.session_id):
        assert closed.started_at <= r.clicked_at <= closed.ended_at


# -- export -----------------------------------------------------------------


def test_export_empty_session_is_header_only(clock):
    svc = service_with(clock)
    session = svc.start_session()
    text = svc.export_log(session.session_id)
    lines = text.splitlines()
    assert len(lines) == 1
    assert '"type":"session-log"' in lines[0]


def test_export_lists_events_in_click_order_and_is_byte_stable(clock):
    svc = service_with(clock)
    session = svc.start_session()
    for name in ("Hungry", "Goodbye", "Thirsty"):
        clock.advance(1_000)
        svc.record_behavior(name)
    first = svc.export_log(session.session_id)
    assert first == svc.export_log(session.session_id)
    lines = first.splitlines()
    assert len(lines) == 4
    import json

    times = [json.loads(l)["clicked_at"] for l in lines[1:]]
    assert times == sorted(times)


def test_export_after_more_clicks_extends_the_previous_export(clock):
    svc = service_with(clock)
    session = svc.start_session()
    svc.record_behavior("Hungry")
    before = svc.export_log(session.session_id)
    clock.advance(1_000)
    svc.record_behavior("Goodbye")
    after = svc.export_log(session.session_id)
    assert after.startswith(before)


def test_export_unknown_session(clock):
    svc = service_with(clock)
    with pytest.raises(UnknownSessionError):
        svc.export_log("nope")


def test_local_log_file_appends(tmp_path, clock):
    svc = service_with(clock, data_dir=str(tmp_path))
    svc.start_session()
    svc.record_behavior("Hungry")
    svc.record_behavior("Goodbye")
    svc.close()
    lines = (tmp_path / "events.jsonl").read_text().splitlines()
    assert len(lines) == 2


# -- sync queue mechanics ------------------------------------------------------


class RejectingClient:
    def __init__(self, store):
        self.store = store

    def put_record(self, record):
        if record.behavior_name == "Goodbye":
            raise RecordRejectedError(["synthetic schema failure"])
        return self.store.put_record(record)


def test_backoff_schedule_and_cap():
    sleeps = []
    client = FlakyStoreClient(RecordStore(), failures=8)
    queue = SyncQueue(client, base_delay_s=0.5, max_delay_s=30.0, max_attempts=10,
                      sleep=sleeps.append)
    from conftest import behavior, full_snapshot
    from behaviorlab.model.records import flatten_record

    queue.enqueue(flatten_record("e1", "s", behavior(), 0, full_snapshot(0)))
    assert queue.drain() == 1
    assert sleeps == [0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 30.0, 30.0]


def test_failed_entry_parks_after_max_attempts_others_unaffected(clock):
    store = RecordStore()
    svc = service_with(clock, client=RejectingClient(store), store=store, sync_max_attempts=3)
    svc.start_session()
    svc.record_behavior("Hungry")
    svc.record_behavior("Goodbye")  # client always rejects this one
    svc.record_behavior("Thirsty")
    acked = svc.drain_sync_queue()
    assert acked == 2
    states = [e.state for e in svc.queue.entries()]
    assert states == [ACKED, FAILED, ACKED]
    failed = svc.queue.entries()[1]
    assert failed.attempts == 3
    assert "synthetic schema failure" in failed.last_error
    assert store.count() == 2
    assert svc.drain_sync_queue() == 0  # failed entries stay parked


def test_drain_transmits_in_clicked_order(clock):
    store = RecordStore()
    svc = service_with(clock, store=store)
    svc.start_session()
    for name in ("Hungry", "Goodbye", "Thirsty"):
        clock.advance(500)
        svc.record_behavior(name)
    svc.drain_sync_queue()
    stored = [s.record.behavior_name for s in store.query_records()]
    assert stored == ["Hungry", "Goodbye", "Thirsty"]


def test_status_reports_sources_queue_and_nearest(clock):
    svc = service_with(clock)
    svc.start_session()
    svc.record_behavior("Hungry")
    status = svc.status()
    assert status["queue_depth"] == 1
    assert status["pending_event_ids"]
    assert status["nearest_beacon"] == "iB-1"
    assert set(status["source_ages_ms"]) == {"beacon", "gps", "env", "weather"}
    svc.drain_sync_queue()
    assert svc.status()["queue_depth"] == 0
    assert svc.status()["queue_acked"] == 1
