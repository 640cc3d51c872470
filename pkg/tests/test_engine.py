"""Recognizer behavior: activation, granularity, swipes, chaining, contacts."""
from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wigglekit.engine import (
    EngineConfig,
    Mode,
    MultiBlockUnsupportedError,
    Phase,
    PhaseError,
    SampleOrderError,
    WiggleEngine,
    classify_extension_point,
    classify_granularity,
    compute_valence,
    priority_from_swipe,
)
from wigglekit.errors import FormatError
from wigglekit.events import (
    Aborted,
    Activated,
    Committed,
    ExtensionUpdated,
    PassThrough,
    Priority,
    PriorityLevel,
    SwipeDirection,
    TrackingProgress,
    Valence,
)
from wigglekit.geometry import (
    PointerKind,
    PointerSample,
    SamplePhase,
    _merged_segments,
    _raw_runs,
)
from wigglekit.synth import oracle_activation_index
from wigglekit.targets import Granularity, Rect, TargetMap, TargetRegion, Viewport

VIEWPORT = Viewport(1280.0, 800.0)


def page_map():
    """Two text blocks side by side, the left one carrying two word targets."""
    return TargetMap(
        regions=(
            TargetRegion("A", Rect(100, 100, 400, 300), Granularity.BLOCK,
                         text="Alpha block", source_url="https://a.example/x"),
            TargetRegion("B", Rect(600, 100, 400, 300), Granularity.BLOCK,
                         text="Beta block", source_url="https://b.example/y"),
            TargetRegion("Aw0", Rect(150, 200, 60, 20), Granularity.WORD,
                         text="alpha", source_url="https://a.example/x", parent_id="A"),
            TargetRegion("Aw1", Rect(220, 200, 60, 20), Granularity.WORD,
                         text="beta", source_url="https://a.example/x", parent_id="A"),
        ),
        viewport=VIEWPORT,
    )


def mouse(t, x, y, phase=SamplePhase.MOVE):
    return PointerSample(t=t, x=float(x), y=float(y), phase=phase, kind=PointerKind.MOUSE)


def touch(t, x, y, phase=SamplePhase.MOVE):
    return PointerSample(t=t, x=float(x), y=float(y), phase=phase, kind=PointerKind.TOUCH)


def feed_all(engine, samples, target_map):
    events = []
    for s in samples:
        events.extend(engine.feed(s, target_map))
    return events


def wiggle_samples(xs, y, t0=0, dt=16, make=mouse):
    return [make(t0 + i * dt, x, y) for i, x in enumerate(xs)]


SEVEN_STROKES_B = [770, 830, 770, 830, 770, 830, 770]  # five reversals at index 6


def desktop_engine(**overrides):
    return WiggleEngine(EngineConfig(**overrides))


def mobile_engine(**overrides):
    return WiggleEngine(EngineConfig(mode=Mode.MOBILE, **overrides))


# -- activation --------------------------------------------------------------------


def test_activation_fires_on_exact_sample_with_full_event_order():
    engine = desktop_engine()
    samples = wiggle_samples(SEVEN_STROKES_B, y=250)
    per_sample = [engine.feed(s, page_map()) for s in samples]

    assert [type(e).__name__ for e in per_sample[0]] == ["PassThrough"]
    assert [type(e).__name__ for e in per_sample[1]] == ["PassThrough"]
    for i in (2, 3, 4, 5):
        kinds = [type(e).__name__ for e in per_sample[i]]
        assert kinds == ["TrackingProgress", "PassThrough"], i
        progress = per_sample[i][0]
        assert progress.reversals == i - 1
        assert progress.candidate_target_id == "B"

    kinds = [type(e).__name__ for e in per_sample[6]]
    assert kinds == ["Activated", "PassThrough"]
    activated = per_sample[6][0]
    assert activated.sample_index == 6
    assert activated.target_id == "B"
    assert activated.granularity is Granularity.BLOCK  # word-scale but no words here
    assert 770.0 <= activated.wiggle_center[0] <= 830.0
    assert activated.wiggle_center[1] == 250.0
    assert engine.phase is Phase.ACTIVATED


def test_activation_index_matches_prefix_oracle():
    samples = wiggle_samples([770, 830, 810, 830, 770, 830, 770, 830, 770], y=250)
    config = EngineConfig()
    oracle = oracle_activation_index(
        samples, config.mode.axis, config.activation_reversals, config.jitter_eps_px
    )
    engine = WiggleEngine(config)
    activated = [e for e in feed_all(engine, samples, page_map()) if isinstance(e, Activated)]
    assert len(activated) == 1
    assert activated[0].sample_index == oracle


def test_no_passthrough_after_activation_on_desktop():
    engine = desktop_engine()
    feed_all(engine, wiggle_samples(SEVEN_STROKES_B, y=250), page_map())
    tail = wiggle_samples([790, 810, 790], y=250, t0=7 * 16)
    events = feed_all(engine, tail, page_map())
    assert not any(isinstance(e, PassThrough) for e in events)


def test_small_strokes_acquire_word_target():
    engine = desktop_engine()
    events = feed_all(
        engine, wiggle_samples([160, 200, 160, 200, 160, 200, 160], y=210), page_map()
    )
    activated = [e for e in events if isinstance(e, Activated)]
    assert len(activated) == 1
    assert activated[0].target_id == "Aw0"
    assert activated[0].granularity is Granularity.WORD


def test_word_extent_boundary_is_block():
    # mean stroke amplitude exactly at the threshold classifies as block
    engine = desktop_engine()
    xs = [767.5, 832.5, 767.5, 832.5, 767.5, 832.5, 767.5]
    events = feed_all(engine, wiggle_samples(xs, y=250), page_map())
    activated = [e for e in events if isinstance(e, Activated)][0]
    assert activated.granularity is Granularity.BLOCK


def test_wiggle_over_empty_space_never_activates():
    engine = desktop_engine()
    events = feed_all(
        engine, wiggle_samples([520, 580, 520, 580, 520, 580, 520, 580, 520], y=700), page_map()
    )
    assert not any(isinstance(e, Activated) for e in events)
    assert all(
        isinstance(e, (PassThrough, TrackingProgress)) for e in events
    )
    assert engine.phase is Phase.TRACKING


def test_tracking_progress_only_on_count_changes():
    engine = desktop_engine()
    xs = [770, 830, 770, 830, 770]  # counts 0,0,1,2,3
    samples = wiggle_samples(xs, y=250)
    # pad with sub-jitter twitches that change nothing
    samples += wiggle_samples([770.5, 769.5, 770.5], y=250, t0=len(xs) * 16)
    events = feed_all(engine, samples, page_map())
    progress = [e for e in events if isinstance(e, TrackingProgress)]
    assert [p.reversals for p in progress] == [1, 2, 3]


# -- idle handling -----------------------------------------------------------------


def test_idle_gap_aborts_tracking_with_previous_sample_index():
    engine = desktop_engine()
    feed_all(engine, wiggle_samples([770, 830, 770], y=250), page_map())
    late = mouse(2 * 16 + 151, 700, 250)
    events = engine.feed(late, page_map())
    assert [type(e).__name__ for e in events] == ["Aborted", "PassThrough"]
    assert events[0].reason == "idle"
    assert events[0].sample_index == 2  # stamped on the last pre-gap sample
    assert events[1].sample_index == 3
    assert engine.phase is Phase.TRACKING  # the late sample starts a new episode


def test_tick_respects_timeout_boundary():
    engine = desktop_engine()
    feed_all(engine, wiggle_samples([770, 830, 770], y=250), page_map())
    last_t = 2 * 16
    assert engine.tick(last_t + 149) is None
    assert engine.phase is Phase.TRACKING
    closing = engine.tick(last_t + 150)
    assert isinstance(closing, Aborted)
    assert engine.phase is Phase.IDLE


def test_activation_then_stop_commits_bare_collection():
    engine = desktop_engine()
    feed_all(engine, wiggle_samples(SEVEN_STROKES_B, y=250), page_map())
    closing = engine.tick(6 * 16 + 150)
    assert closing == Committed(sample_index=6, target_ids=("B",), encoding=None)
    assert engine.phase is Phase.IDLE


def test_commit_also_fires_implicitly_on_next_sample_after_gap():
    engine = desktop_engine()
    feed_all(engine, wiggle_samples(SEVEN_STROKES_B, y=250), page_map())
    events = engine.feed(mouse(6 * 16 + 200, 640, 700), page_map())
    assert isinstance(events[0], Committed)
    assert events[0].target_ids == ("B",)
    assert events[0].sample_index == 6


# -- extension swipes -----------------------------------------------------------------


def activate_over_b(engine, target_map):
    feed_all(engine, wiggle_samples(SEVEN_STROKES_B, y=250), target_map)
    center = engine.state().wiggle_center
    assert engine.phase is Phase.ACTIVATED
    return center


def test_right_swipe_half_available_encodes_plus_five():
    engine = desktop_engine()
    target_map = page_map()
    center = activate_over_b(engine, target_map)
    available = VIEWPORT.w - center[0]
    swipe = mouse(7 * 16, center[0] + 0.5 * available, center[1])
    events = engine.feed(swipe, target_map)
    assert [type(e).__name__ for e in events] == ["ExtensionUpdated"]
    assert events[0].direction is SwipeDirection.RIGHT
    assert events[0].fraction_of_available == pytest.approx(0.5)
    closing = engine.tick(7 * 16 + 150)
    assert closing.encoding == Valence(5)
    assert closing.target_ids == ("B",)


def test_left_swipe_to_edge_encodes_minus_ten():
    engine = desktop_engine()
    target_map = page_map()
    center = activate_over_b(engine, target_map)
    events = engine.feed(mouse(7 * 16, 0, center[1]), target_map)
    assert events[-1].fraction_of_available == pytest.approx(1.0)
    closing = engine.tick(7 * 16 + 150)
    assert closing.encoding == Valence(-10)


def test_vertical_swipes_map_to_priorities():
    for dy_fraction, direction_sign, expected in [
        (0.95, -1, Priority(PriorityLevel.URGENT)),
        (0.5, -1, Priority(PriorityLevel.HIGH)),
        (0.5, +1, Priority(PriorityLevel.NORMAL)),
        (0.95, +1, Priority(PriorityLevel.LOW)),
    ]:
        engine = desktop_engine()
        target_map = page_map()
        center = activate_over_b(engine, target_map)
        room = (VIEWPORT.h - center[1]) if direction_sign > 0 else center[1]
        target_y = center[1] + direction_sign * dy_fraction * room
        engine.feed(mouse(7 * 16, center[0], target_y), target_map)
        closing = engine.tick(7 * 16 + 150)
        assert closing.encoding == expected, (dy_fraction, direction_sign)


def test_short_displacement_is_not_a_swipe():
    engine = desktop_engine()
    target_map = page_map()
    center = activate_over_b(engine, target_map)
    events = engine.feed(mouse(7 * 16, center[0] + 70, center[1]), target_map)
    assert events == []
    closing = engine.tick(7 * 16 + 150)
    assert closing.encoding is None


def test_retreating_swipe_commits_bare():
    engine = desktop_engine()
    target_map = page_map()
    center = activate_over_b(engine, target_map)
    engine.feed(mouse(7 * 16, center[0] + 200, center[1]), target_map)
    assert engine.phase is Phase.EXTENDING
    events = engine.feed(mouse(8 * 16, center[0] + 20, center[1]), target_map)
    assert events == []  # retraction is silent; the commit tells the truth
    assert engine.phase is Phase.ACTIVATED
    closing = engine.tick(8 * 16 + 150)
    assert closing.encoding is None


def test_wiggle_center_is_frozen_during_extension():
    engine = desktop_engine()
    target_map = page_map()
    center = activate_over_b(engine, target_map)
    for i, dx in enumerate((100, 200, 300)):
        engine.feed(mouse((7 + i) * 16, center[0] + dx, center[1]), target_map)
        assert engine.state().wiggle_center == center


def test_diagonal_displacement_is_ambiguous():
    engine = desktop_engine()
    target_map = page_map()
    center = activate_over_b(engine, target_map)
    events = engine.feed(mouse(7 * 16, center[0] + 120, center[1] + 100), target_map)
    assert events == []  # fails the 2:1 dominance test
    assert engine.phase is Phase.ACTIVATED


# -- multi-region chaining ---------------------------------------------------------------


def wiggle_over_a(t0=0):
    return wiggle_samples([270, 330, 270, 330, 270, 330, 270], y=250, t0=t0)


def test_chaining_appends_second_region():
    engine = desktop_engine()
    target_map = page_map()
    events = feed_all(engine, wiggle_over_a(), target_map)
    assert [e.target_id for e in events if isinstance(e, Activated)] == ["A"]

    glide_xs = [400, 500, 600, 700, 770]
    t0 = 7 * 16
    glide = wiggle_samples(glide_xs, y=250, t0=t0)
    strokes = wiggle_samples([830, 770, 830, 770, 830, 770, 830], y=250, t0=t0 + len(glide) * 16)
    events = feed_all(engine, glide + strokes, target_map)
    second = [e for e in events if isinstance(e, Activated)]
    assert [e.target_id for e in second] == ["B"]
    assert not any(isinstance(e, PassThrough) for e in events)

    closing = engine.tick(strokes[-1].t + 150)
    assert closing.target_ids == ("A", "B")
    assert closing.encoding is None


def test_rethreshold_over_same_region_is_silent():
    engine = desktop_engine()
    target_map = page_map()
    feed_all(engine, wiggle_over_a(), target_map)
    more = wiggle_samples([330, 270, 330, 270, 330, 270, 330, 270], y=250, t0=7 * 16)
    events = feed_all(engine, more, target_map)
    assert not any(isinstance(e, Activated) for e in events)
    closing = engine.tick(more[-1].t + 150)
    assert closing.target_ids == ("A",)


def test_swipe_origin_resets_at_each_chain_lock():
    engine = desktop_engine()
    target_map = page_map()
    feed_all(engine, wiggle_over_a(), target_map)
    first_center = engine.state().wiggle_center

    glide = wiggle_samples([400, 500, 600, 700, 770], y=250, t0=7 * 16)
    strokes = wiggle_samples(
        [830, 770, 830, 770, 830, 770, 830], y=250, t0=glide[-1].t + 16
    )
    feed_all(engine, glide + strokes, target_map)
    second_center = engine.state().wiggle_center
    assert second_center != first_center
    assert 770.0 <= second_center[0] <= 830.0


def test_continue_multi_block_guards():
    engine = mobile_engine()
    with pytest.raises(MultiBlockUnsupportedError):
        engine.continue_multi_block(touch(0, 100, 100), page_map())

    idle_engine = desktop_engine()
    with pytest.raises(PhaseError):
        idle_engine.continue_multi_block(mouse(0, 100, 100), page_map())


def test_continue_multi_block_chains_when_pending():
    engine = desktop_engine()
    target_map = page_map()
    feed_all(engine, wiggle_over_a(), target_map)
    t0 = 7 * 16
    samples = wiggle_samples([400, 500, 600, 700, 770], y=250, t0=t0)
    samples += wiggle_samples(
        [830, 770, 830, 770, 830, 770, 830], y=250, t0=samples[-1].t + 16
    )
    events = []
    for s in samples:
        events.extend(engine.continue_multi_block(s, target_map))
    assert [e.target_id for e in events if isinstance(e, Activated)] == ["B"]


# -- desktop contact semantics ----------------------------------------------------------


def test_contact_start_aborts_tracking():
    engine = desktop_engine()
    feed_all(engine, wiggle_samples([770, 830, 770], y=250), page_map())
    events = engine.feed(mouse(3 * 16, 770, 250, SamplePhase.CONTACT_START), page_map())
    assert [type(e).__name__ for e in events] == ["Aborted", "PassThrough"]
    assert events[0].reason == "contact"


def test_button_held_motion_only_passes_through():
    engine = desktop_engine()
    target_map = page_map()
    engine.feed(mouse(0, 770, 250, SamplePhase.CONTACT_START), target_map)
    held = wiggle_samples([830, 770, 830, 770, 830, 770, 830, 770], y=250, t0=16)
    events = feed_all(engine, held, target_map)
    assert all(isinstance(e, PassThrough) for e in events)
    engine.feed(mouse(160, 770, 250, SamplePhase.CONTACT_END), target_map)
    # with the button released the same motion activates again
    events = feed_all(engine, wiggle_samples(SEVEN_STROKES_B, y=250, t0=200), target_map)
    assert any(isinstance(e, Activated) for e in events)


def test_contact_start_commits_pending_collection():
    engine = desktop_engine()
    target_map = page_map()
    activate_over_b(engine, target_map)
    events = engine.feed(mouse(7 * 16, 800, 250, SamplePhase.CONTACT_START), target_map)
    assert [type(e).__name__ for e in events] == ["Committed", "PassThrough"]
    assert events[0].target_ids == ("B",)


# -- mobile --------------------------------------------------------------------------


def vertical_wiggle_ys(n=7):
    return [220 if i % 2 == 0 else 280 for i in range(n)]


def test_mobile_wiggle_activates_block_and_suppresses_passthrough():
    engine = mobile_engine()
    target_map = page_map()
    start = touch(0, 800, 250, SamplePhase.CONTACT_START)
    assert [type(e).__name__ for e in engine.feed(start, target_map)] == ["PassThrough"]

    moves = [touch(16 * (i + 1), 800, y) for i, y in enumerate(vertical_wiggle_ys(9))]
    per_sample = [engine.feed(s, target_map) for s in moves]
    fired = [
        i for i, events in enumerate(per_sample) if any(isinstance(e, Activated) for e in events)
    ]
    assert len(fired) == 1
    activation = per_sample[fired[0]]
    # pre-activation moves pass through; the activating one and later do not
    for events in per_sample[: fired[0]]:
        assert isinstance(events[-1], PassThrough)
    for events in per_sample[fired[0] :]:
        assert not any(isinstance(e, PassThrough) for e in events)
    assert [type(e).__name__ for e in activation] == ["Activated"]
    assert activation[0].target_id == "B"
    assert activation[0].granularity is Granularity.BLOCK

    # post-activation motion is swallowed until the finger lifts
    post = engine.feed(touch(16 * 11, 800, 300), target_map)
    assert not any(isinstance(e, PassThrough) for e in post)

    lift = engine.feed(touch(16 * 12, 800, 300, SamplePhase.CONTACT_END), target_map)
    assert [type(e).__name__ for e in lift] == ["Committed"]
    assert lift[0].target_ids == ("B",)


def test_mobile_target_fixed_at_touch_point():
    engine = mobile_engine()
    target_map = page_map()
    engine.feed(touch(0, 300, 250, SamplePhase.CONTACT_START), target_map)  # over A
    moves = [touch(16 * (i + 1), 300, y) for i, y in enumerate(vertical_wiggle_ys())]
    events = feed_all(engine, moves, target_map)
    activated = [e for e in events if isinstance(e, Activated)]
    assert [e.target_id for e in activated] == ["A"]
    progress = [e for e in events if isinstance(e, TrackingProgress)]
    assert progress and all(p.candidate_target_id == "A" for p in progress)
    assert all(p.granularity is Granularity.BLOCK for p in progress)


def test_mobile_lift_before_activation_aborts():
    engine = mobile_engine()
    target_map = page_map()
    engine.feed(touch(0, 800, 250, SamplePhase.CONTACT_START), target_map)
    feed_all(engine, [touch(16, 800, 220), touch(32, 800, 280), touch(48, 800, 220)], target_map)
    events = engine.feed(touch(64, 800, 220, SamplePhase.CONTACT_END), target_map)
    assert [type(e).__name__ for e in events] == ["Aborted", "PassThrough"]
    assert events[0].reason == "contact-end"


def test_mobile_wiggle_off_content_never_activates():
    engine = mobile_engine()
    target_map = page_map()
    engine.feed(touch(0, 550, 600, SamplePhase.CONTACT_START), target_map)
    moves = [touch(16 * (i + 1), 550, 560 + (60 if i % 2 else 0)) for i in range(12)]
    events = feed_all(engine, moves, target_map)
    assert not any(isinstance(e, Activated) for e in events)
    assert not any(isinstance(e, TrackingProgress) for e in events)
    assert all(isinstance(e, PassThrough) for e in events)


def test_mobile_left_swipe_encodes_negative_valence():
    engine = mobile_engine()
    target_map = page_map()
    engine.feed(touch(0, 800, 250, SamplePhase.CONTACT_START), target_map)
    moves = [touch(16 * (i + 1), 800, y) for i, y in enumerate(vertical_wiggle_ys())]
    feed_all(engine, moves, target_map)
    center = engine.state().wiggle_center
    engine.feed(touch(16 * 9, center[0] - 0.5 * center[0], center[1]), target_map)
    lift = engine.feed(
        touch(16 * 10, center[0] - 0.5 * center[0], center[1], SamplePhase.CONTACT_END),
        target_map,
    )
    assert lift[0].encoding == Valence(-5)


def test_mobile_vertical_motion_never_extends():
    engine = mobile_engine()
    target_map = page_map()
    engine.feed(touch(0, 800, 250, SamplePhase.CONTACT_START), target_map)
    moves = [touch(16 * (i + 1), 800, y) for i, y in enumerate(vertical_wiggle_ys())]
    feed_all(engine, moves, target_map)
    events = engine.feed(touch(16 * 9, 800, 700), target_map)  # long vertical pull
    assert not any(isinstance(e, ExtensionUpdated) for e in events)
    lift = engine.feed(touch(16 * 10, 800, 700, SamplePhase.CONTACT_END), target_map)
    assert lift[0].encoding is None


def test_mobile_mid_contact_idle_commit_keeps_suppression():
    engine = mobile_engine()
    target_map = page_map()
    engine.feed(touch(0, 800, 250, SamplePhase.CONTACT_START), target_map)
    moves = [touch(16 * (i + 1), 800, y) for i, y in enumerate(vertical_wiggle_ys())]
    feed_all(engine, moves, target_map)
    assert engine.phase is Phase.ACTIVATED

    # finger rests >= timeout without lifting: the collection commits...
    late = engine.feed(touch(16 * 8 + 200, 800, 260), target_map)
    assert isinstance(late[0], Committed)
    # ...and the rest of this contact stays swallowed
    assert not any(isinstance(e, PassThrough) for e in late)
    more = engine.feed(touch(16 * 8 + 216, 800, 300), target_map)
    assert not any(isinstance(e, PassThrough) for e in more)
    lift = engine.feed(touch(16 * 8 + 232, 800, 300, SamplePhase.CONTACT_END), target_map)
    assert not any(isinstance(e, PassThrough) for e in lift)


# -- stream hygiene -------------------------------------------------------------------


def test_sample_order_enforced_without_corrupting_state():
    engine = desktop_engine()
    engine.feed(mouse(100, 700, 250), page_map())
    with pytest.raises(SampleOrderError):
        engine.feed(mouse(50, 700, 250), page_map())
    events = engine.feed(mouse(110, 705, 250), page_map())
    assert [type(e).__name__ for e in events] == ["PassThrough"]


def test_out_of_viewport_samples_are_clamped():
    engine = desktop_engine()
    engine.feed(mouse(0, -50, 900), page_map())
    assert engine.clamped_samples == 1
    state = engine.state()
    assert state.segment_history == ()


def test_kind_mismatch_warns_once():
    engine = desktop_engine()
    for i in range(5):
        engine.feed(touch(i * 16, 700, 250), page_map())
    assert len(engine.warnings) == 1
    assert "touch" in engine.warnings[0]


def test_reset_clears_gesture_state():
    engine = desktop_engine()
    target_map = page_map()
    activate_over_b(engine, target_map)
    engine.reset()
    assert engine.phase is Phase.IDLE
    assert engine.state().pending_target_ids == ()
    events = feed_all(engine, wiggle_samples(SEVEN_STROKES_B, y=250, t0=500), target_map)
    assert [e.target_id for e in events if isinstance(e, Activated)] == ["B"]


def test_identical_streams_produce_identical_events():
    from wigglekit.synth import TraceKind, TraceSpec, generate, single_block_map

    spec = TraceSpec(
        kind=TraceKind.WIGGLE_SWIPE,
        seed=21,
        noise_sigma_px=2.5,
        swipe_direction=SwipeDirection.RIGHT,
        swipe_fraction=0.7,
    )
    trace = generate(spec)
    target_map = single_block_map()
    runs = []
    for _ in range(2):
        engine = desktop_engine()
        events = feed_all(engine, trace, target_map)
        closing = engine.tick(trace[-1].t + 150)
        runs.append(events + ([closing] if closing else []))
    assert runs[0] == runs[1]


# -- config --------------------------------------------------------------------------


def test_config_json_round_trip_and_validation():
    config = EngineConfig(mode=Mode.MOBILE, activation_reversals=7, jitter_eps_px=3.5)
    assert EngineConfig.from_json_dict(config.to_json_dict()) == config
    with pytest.raises(FormatError):
        EngineConfig.from_json_dict({"mode": "desktop", "surprise": 1})
    with pytest.raises(ValueError):
        EngineConfig(activation_reversals=0)
    with pytest.raises(ValueError):
        EngineConfig(idle_timeout_ms=-5)
    with pytest.raises(ValueError):
        EngineConfig(edge_fraction=1.5)


def test_load_config_file(tmp_path):
    import json as json_mod

    path = tmp_path / "config.json"
    path.write_text(json_mod.dumps({"mode": "mobile", "activation_reversals": 6}))
    from wigglekit.engine import load_config

    config = load_config(path)
    assert config.mode is Mode.MOBILE
    assert config.activation_reversals == 6
    path.write_text("{not json")
    with pytest.raises(FormatError):
        load_config(path)


# -- classification units ----------------------------------------------------------------


def test_classify_granularity_table():
    for extent, expected in [
        (40.0, Granularity.WORD),
        (64.0, Granularity.WORD),
        (65.0, Granularity.BLOCK),
        (120.0, Granularity.BLOCK),
    ]:
        assert classify_granularity(extent, Mode.DESKTOP) is expected, extent
    assert classify_granularity(10.0, Mode.MOBILE) is Granularity.BLOCK


def test_compute_valence_table():
    cases = [
        (SwipeDirection.RIGHT, 1.0, 10),
        (SwipeDirection.RIGHT, 0.95, 10),
        (SwipeDirection.RIGHT, 0.5, 5),
        (SwipeDirection.RIGHT, 0.05, 1),
        (SwipeDirection.RIGHT, 0.04, 0),
        (SwipeDirection.LEFT, 1.0, -10),
        (SwipeDirection.LEFT, 0.5, -5),
        (SwipeDirection.LEFT, 0.0, 0),
    ]
    for direction, fraction, expected in cases:
        assert compute_valence(direction, fraction) == expected, (direction, fraction)
    with pytest.raises(ValueError):
        compute_valence(SwipeDirection.UP, 0.5)


def test_priority_table():
    assert priority_from_swipe(SwipeDirection.UP, 0.9) is PriorityLevel.URGENT
    assert priority_from_swipe(SwipeDirection.UP, 0.89) is PriorityLevel.HIGH
    assert priority_from_swipe(SwipeDirection.DOWN, 0.9) is PriorityLevel.LOW
    assert priority_from_swipe(SwipeDirection.DOWN, 0.3) is PriorityLevel.NORMAL
    with pytest.raises(ValueError):
        priority_from_swipe(SwipeDirection.LEFT, 0.5)


def test_classify_extension_point_edge_cases():
    center = (0.0, 400.0)  # already on the left edge
    swipe = classify_extension_point((-0.0, 400.0), center, VIEWPORT, Mode.DESKTOP)
    assert swipe is None  # no displacement
    # moving right 100px from an interior point
    swipe = classify_extension_point((740.0, 400.0), (640.0, 400.0), VIEWPORT, Mode.DESKTOP)
    assert swipe.direction is SwipeDirection.RIGHT
    assert swipe.fraction_of_available == pytest.approx(100.0 / 640.0)
    # mobile ignores vertical pulls entirely
    assert (
        classify_extension_point((640.0, 100.0), (640.0, 400.0), VIEWPORT, Mode.MOBILE)
        is None
    )


# -- incremental segmentation equivalence ---------------------------------------------


@given(
    xs=st.lists(
        st.floats(min_value=0, max_value=1280, allow_nan=False), min_size=1, max_size=60
    ),
    eps=st.floats(min_value=0.0, max_value=6.0),
)
@settings(max_examples=100)
def test_incremental_accumulation_equals_batch_segmentation(xs, eps):
    from wigglekit.engine import _Accumulation
    from wigglekit.geometry import Axis

    acc = _Accumulation()
    for i, x in enumerate(xs):
        acc.push(mouse(i * 16, x, 300.0), Axis.HORIZONTAL)
    batch = _merged_segments(xs, _raw_runs(xs), eps)
    assert acc.segments(eps) == batch
