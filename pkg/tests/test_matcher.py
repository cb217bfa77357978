import numpy as np
import pytest

from setpmatch.compare import layer1_fingerprints
from setpmatch.generate import GenSpec, generate, random_setstring
from setpmatch.matcher import (
    OccurrenceLists,
    advance,
    find_matches,
    init_state,
    pattern_hash,
    scan,
    window_hash_scratch,
)
from setpmatch.modhash import select_primes
from setpmatch.offsets import compute_offsets, exact_compare
from setpmatch.oracle import oracle_find_matches
from setpmatch.setstring import Alphabet, SetString, apply_bijection

from conftest import ss


def _params(n=20, m=5, sigma=4, seed=0):
    return select_primes(n, m, sigma, seed=seed)


def test_pattern_hash_trivial():
    hp = _params()
    assert pattern_hash(ss((), ()), hp) == 0
    # one occurrence: psi = r1**0 = 1, fingerprint r3**0 = 1
    assert pattern_hash(ss({2}), hp) == hp.layer2.r % hp.layer3.p
    with pytest.raises(ValueError):
        pattern_hash(ss(), hp)


def test_pattern_hash_is_window_one_of_itself():
    hp = _params()
    p = ss({1, 2}, (), {2}, {3})
    assert pattern_hash(p, hp) == window_hash_scratch(p, 1, len(p), hp)


def test_init_state():
    hp = _params()
    t = ss({1}, {2}, (), {1, 3}, {2})
    st = init_state(t, 3, hp)
    assert st.h_window == window_hash_scratch(t, 1, 3, hp)
    assert st.r_glob == 1 and st.window_start == 1
    assert init_state(ss((), (), ()), 2, hp).h_window == 0
    with pytest.raises(ValueError):
        init_state(t, 6, hp)


def test_scratch_bounds():
    hp = _params()
    t = ss({1}, {2})
    with pytest.raises(ValueError):
        window_hash_scratch(t, 2, 2, hp)
    with pytest.raises(ValueError):
        window_hash_scratch(t, 0, 1, hp)


def test_occurrence_lists():
    occ = OccurrenceLists.build(ss({1}, {2}, {1, 2}))
    assert occ.positions == {1: [0, 2], 2: [1, 2]}
    assert sum(len(v) for v in occ.positions.values()) == 4
    assert occ.first_at_or_after(1) == 0


def _check_state(state, t, hp):
    """psi and fingerprints of every in-window character, recomputed."""
    i, m = state.start, state.m
    window = t.slice(i, i + m)
    psi = layer1_fingerprints(compute_offsets(window), hp.layer1)
    assert state.psi == psi
    p3, r3 = hp.layer3.p, hp.layer3.r
    for c in psi:
        expect = sum(pow(r3, k, p3) for k, pos in enumerate(window) if c in pos) % p3
        assert state.fingerprint(c) == expect
    assert state.r_glob * state.r_glob_inv % p3 == 1
    assert state.h_window == window_hash_scratch(t, i + 1, m, hp)


def test_advance_matches_scratch_with_full_state(rng):
    for trial in range(60):
        n = int(rng.integers(2, 50))
        m = int(rng.integers(1, n))
        sigma = int(rng.integers(1, 6))
        t = random_setstring(rng, n, sigma, min(sigma, float(rng.uniform(0.3, 3))))
        hp = _params(n, m, sigma, seed=trial)
        state = init_state(t, m, hp)
        _check_state(state, t, hp)
        cursor_before = dict(state.occ.cursor)
        for _ in range(n - m):
            advance(state, t)
            _check_state(state, t, hp)
            assert all(state.occ.cursor[c] >= cursor_before[c] for c in cursor_before)
            cursor_before = dict(state.occ.cursor)


def test_advance_empty_periodic_text():
    hp = _params()
    t = ss(*([()] * 10))
    state = init_state(t, 3, hp)
    for _ in range(7):
        advance(state, t)
        assert state.h_window == 0


def test_character_leaving_and_entering():
    # char 1 sits at both the leaving (0) and entering (m = 3) positions,
    # plus once inside the window
    hp = _params()
    t = ss({1}, {1, 2}, (), {1}, {2})
    state = init_state(t, 3, hp)
    advance(state, t)
    assert state.h_window == window_hash_scratch(t, 2, 3, hp)
    assert state.psi[1] == (1 + hp.layer1.r**2) % hp.layer1.p
    # only at the boundary: leaves entirely, then re-enters as new
    t = ss({1}, (), (), {1})
    state = init_state(t, 3, hp)
    advance(state, t)
    assert state.psi[1] == 1
    assert state.h_window == window_hash_scratch(t, 2, 3, hp)


def test_advance_past_end():
    hp = _params()
    t = ss({1}, {2})
    state = init_state(t, 2, hp)
    with pytest.raises(ValueError):
        advance(state, t)


def test_exiting_characters_are_dropped():
    hp = _params()
    t = ss({1}, {2}, {3}, (), (), ())
    state = init_state(t, 3, hp)
    for _ in range(3):
        advance(state, t)
    assert state.psi == {} and state.p_stored == {} and state.h_window == 0


def test_paper_pair_no_match(paper_pair):
    s1, s2 = paper_pair
    assert find_matches(s1, s2).candidates == []
    rep = find_matches(s1, s2, verify=True)
    assert rep.matches == []
    assert find_matches(s1, s1, verify=True).matches == [1]


def test_verbatim_window_always_found(rng):
    for seed in range(40):
        t = random_setstring(rng, 30, 4, 1.5)
        j = int(rng.integers(0, 25))
        p = t.slice(j, j + 5)
        assert j + 1 in find_matches(p, t, seed=seed).candidates


def test_matches_oracle_random(rng):
    for trial in range(150):
        n = int(rng.integers(1, 41))
        m = int(rng.integers(1, min(8, n) + 1))
        sigma = int(rng.integers(1, 7))
        d = min(sigma, float(rng.uniform(0.5, 2.5)))
        t = random_setstring(rng, n, sigma, d)
        if rng.random() < 0.5:
            j = int(rng.integers(0, n - m + 1))
            p = t.slice(j, j + m)
        else:
            p = random_setstring(rng, m, sigma, d)
        truth = oracle_find_matches(p, t)
        rep = find_matches(p, t, seed=trial, verify=True)
        assert set(truth) <= set(rep.candidates)
        assert rep.matches == truth
        for pos, w in zip(rep.candidates, rep.witnesses):
            if w is not None:
                assert apply_bijection(p, w) == t.slice(pos - 1, pos - 1 + m)


def test_planted_matches_found():
    for seed in range(5):
        inst = generate(GenSpec(n=300, m=12, sigma=8, density=2.0, planted=6, seed=seed))
        rep = find_matches(inst.pattern, inst.text, seed=seed)
        assert set(inst.planted_positions) <= set(rep.candidates)


def test_repetitions_intersect_and_jobs_do_not_change_output():
    inst = generate(GenSpec(n=200, m=6, sigma=3, density=1.0, planted=4, seed=1))
    hp = select_primes(200, 6, 3, seed=2, repetitions=3)
    a = find_matches(inst.pattern, inst.text, hp)
    b = find_matches(inst.pattern, inst.text, hp, jobs=2)
    assert a == b
    assert len(a.params_echo) == 3 and len(a.steps) == 3
    singles = [scan(inst.pattern, inst.text, h)[0] for h in hp.instances()]
    assert a.candidates == sorted(set.intersection(*map(set, singles)))


def test_m_equals_n():
    hp = _params()
    t = ss({1}, {2, 3})
    assert find_matches(ss({5}, {6, 4}), t).candidates == [1]


def test_errors():
    t = ss({1}, {2})
    with pytest.raises(ValueError):
        find_matches(ss({1}, {1}, {1}), t)
    with pytest.raises(ValueError):
        find_matches(ss(), t)
    a, b = Alphabet(["x", "y"]), Alphabet(["x", "y"])
    with pytest.raises(ValueError):
        find_matches(SetString.from_sets([{1}], a), SetString.from_sets([{1}, {2}], b))


def test_step_counter_linear():
    steps = []
    for n in (2000, 4000, 8000):
        inst = generate(GenSpec(n=n, m=10, sigma=16, density=2.0, seed=0))
        hp = select_primes(n, 10, 16, repetitions=1)
        steps.append(scan(inst.pattern, inst.text, hp)[1])
    assert 1.8 <= steps[1] / steps[0] <= 2.5
    assert 1.8 <= steps[2] / steps[1] <= 2.5
