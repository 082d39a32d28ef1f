import numpy as np
import pytest

from dseqmark.analysis import correlation_report, select_shifts, worst_shift
from dseqmark.errors import DimensionError, ParameterError, PlanFormatError
from dseqmark.prng import XorShift64Star
from dseqmark.raster import BitMatrix, GrayImage
from dseqmark.synth import checker, cover_from_spec, flat, gradient, random_mark, texture
from dseqmark.watermark import (
    WatermarkPlan,
    derive_shifts,
    embed,
    extract,
    make_plan,
    noise_pixels,
    pin_shifts,
    psnr,
    spread_pattern,
)


def test_plan_geometry_q283():
    plan = make_plan(283, 2, (256, 256), (8, 8), "selected", 0)
    assert (plan.block_w, plan.block_h) == (32, 32)
    assert len(plan.shifts) == 64
    assert plan.period == 94
    assert all(0 <= s < 94 for s in plan.shifts)


def test_plan_selected_cycles_best_shifts():
    rep = correlation_report(7)
    assert derive_shifts(rep, "selected", 0, 5) == (1, 2, 1, 2, 1)
    plan = make_plan(283, 2, (256, 256), (8, 8), "selected", 0)
    assert list(plan.shifts) == select_shifts(plan.report(), 64)


def test_plan_circular():
    assert make_plan(283, 2, (5, 5), (1, 1), "circular", 0).shifts == (0,)
    plan = make_plan(283, 2, (256, 256), (8, 8), "circular", 0)
    assert plan.shifts[:4] == (0, 1, 2, 3)  # stride 94 // 64 == 1
    plan = make_plan(283, 2, (64, 64), (4, 4), "circular", 0)
    assert plan.shifts[:3] == (0, 5, 10)    # stride 94 // 16 == 5


def test_plan_random_is_deterministic():
    a = make_plan(283, 2, (256, 256), (8, 8), "random", 0xABC)
    b = make_plan(283, 2, (256, 256), (8, 8), "random", 0xABC)
    c = make_plan(283, 2, (256, 256), (8, 8), "random", 0xABD)
    assert a == b and a.shifts != c.shifts
    rng = XorShift64Star(0xABC)
    assert list(a.shifts) == [rng.below(94) for _ in range(64)]


def test_plan_errors():
    with pytest.raises(DimensionError):
        make_plan(283, 2, (4, 4), (8, 8))
    with pytest.raises(ParameterError):
        make_plan(283, 2, (8, 8), (8, 8), "spiral")
    with pytest.raises(ParameterError):
        make_plan(284, 2, (8, 8), (8, 8))
    with pytest.raises(ParameterError):
        make_plan(283, -1, (8, 8), (8, 8))


def test_plan_text_roundtrip():
    for mode in ("selected", "circular", "random"):
        plan = make_plan(277, 3, (256, 200), (8, 5), mode, 2**63 + 5)
        text = plan.to_text()
        assert "key=0x8000000000000005" in text and "block=32x40" in text
        assert WatermarkPlan.from_text(text) == plan


def test_plan_text_does_not_store_shifts():
    text = make_plan(283, 2, (256, 256), (8, 8), "random", 1).to_text()
    assert set(line.split("=")[0] for line in text.splitlines()) == {
        "q", "r", "k", "mode", "key", "mark", "block", "polarity"}


@pytest.mark.parametrize("text", [
    "q=283\nr=2\nk=2\nmode=selected\nkey=0x0\nmark=8x8\n",             # truncated
    "q=283\nr=2\nk=2\nmode=selected\nkey=zz\nmark=8x8\nblock=32x32\n",
    "q=284\nr=2\nk=2\nmode=selected\nkey=0\nmark=8x8\nblock=32x32\n",
    "q=283\nr=3\nk=2\nmode=selected\nkey=0\nmark=8x8\nblock=32x32\n",
    "garbage",
])
def test_plan_text_errors(text):
    with pytest.raises(PlanFormatError):
        WatermarkPlan.from_text(text)


def _q7_plan(shift):
    plan = make_plan(7, 1, (2, 2), (1, 1), "circular", 0)
    return pin_shifts(plan, shift)


def test_spread_pattern_examples():
    assert _q7_plan(0).chips().tolist() == [-1, -1, 1]
    assert spread_pattern(_q7_plan(0), 0).tolist() == [[-1, -1], [1, -1]]
    assert spread_pattern(_q7_plan(1), 0).tolist() == [[-1, 1], [-1, -1]]
    plan = make_plan(7, 1, (3, 1), (1, 1), "circular", 0)
    assert spread_pattern(plan, 0).ravel().tolist() == plan.chips().tolist()
    with pytest.raises(ParameterError):
        spread_pattern(plan, 1)


def test_embed_equation():
    cover = GrayImage(np.array([[100, 100], [254, 1]], np.uint8))
    mark = BitMatrix([[1]])
    plan = make_plan(7, 5, (2, 2), (1, 1), "circular", 0)
    out = embed(cover, mark, plan).pixels
    # chips tile as [[-1, -1], [1, -1]]
    assert out.tolist() == [[95, 95], [255, 0]]
    zero = make_plan(7, 0, (2, 2), (1, 1), "circular", 0)
    assert embed(cover, mark, zero) == cover


def test_embed_leaves_white_blocks_and_margins():
    cover = texture(260, 259, seed=3)
    mark = random_mark(8, 8, 4, 30)
    plan = make_plan(283, 5, (260, 259), (8, 8), "random", 9)
    out = embed(cover, mark, plan).pixels
    c = cover.pixels
    for i, bit in enumerate(mark.bits.ravel()):
        y, x = divmod(i, 8)
        blk = np.s_[y * 32:(y + 1) * 32, x * 32:(x + 1) * 32]
        assert np.array_equal(out[blk], c[blk]) == (bit == 0)
    assert np.array_equal(out[256:, :], c[256:, :])
    assert np.array_equal(out[:, 256:], c[:, 256:])


def test_embed_dimension_errors():
    plan = make_plan(283, 2, (256, 256), (8, 8))
    with pytest.raises(DimensionError):
        embed(flat(128, 128), random_mark(8, 8, 0), plan)
    with pytest.raises(DimensionError):
        embed(flat(256, 256), random_mark(4, 4, 0), plan)
    with pytest.raises(DimensionError):
        extract(flat(100, 256), plan)


@pytest.mark.parametrize("black", [10, 24, 40, 54])
@pytest.mark.parametrize("mode", ["selected", "circular", "random"])
def test_roundtrip_flat(black, mode):
    cover = flat(256, 256)
    mark = random_mark(8, 8, black, black)
    plan = make_plan(283, 2, (256, 256), (8, 8), mode, 11)
    res = extract(embed(cover, mark, plan), plan)
    assert res.recovered == mark


def test_threshold_consistency():
    cover = texture(256, 256, seed=1)
    for seed in range(5):
        mark = random_mark(8, 8, seed)
        plan = make_plan(277, 1, (256, 256), (8, 8), "random", seed)
        res = extract(embed(cover, mark, plan), plan)
        c = np.asarray(res.correlations)
        assert res.threshold == pytest.approx(c.mean(), rel=1e-12, abs=1e-12)
        assert np.array_equal(res.recovered.bits.ravel(), (c > res.threshold).astype(np.uint8))


def test_all_zero_mark_is_degenerate():
    cover = flat(256, 256)
    mark = BitMatrix(np.zeros((8, 8), np.uint8))
    plan = make_plan(283, 2, (256, 256), (8, 8))
    res = extract(embed(cover, mark, plan), plan)
    # every correlation equals the mean, so nothing is strictly above it
    assert len(set(res.correlations)) == 1
    assert res.recovered.black() == 0
    ones = BitMatrix(np.ones((8, 8), np.uint8))
    res = extract(embed(cover, ones, plan), plan)
    assert res.recovered.black() < 64


def test_unmarked_cover_gives_chance_recovery():
    totals = []
    for seed in range(20):
        cover = texture(256, 256, seed=100 + seed)
        mark = random_mark(8, 8, seed)
        plan = make_plan(283, 2, (256, 256), (8, 8), "random", seed)
        totals.append(noise_pixels(extract(cover, plan).recovered, mark))
    assert 32 * 0.75 <= np.mean(totals) <= 32 * 1.25


def test_wrong_key_gives_chance_recovery():
    totals = []
    for seed in range(20):
        cover = texture(256, 256, seed=200 + seed)
        mark = random_mark(8, 8, seed)
        plan = make_plan(283, 5, (256, 256), (8, 8), "random", seed)
        wrong = make_plan(283, 5, (256, 256), (8, 8), "random", seed + 1000)
        totals.append(noise_pixels(extract(embed(cover, mark, plan), wrong).recovered, mark))
    assert 32 * 0.75 <= np.mean(totals) <= 32 * 1.25


def test_noise_pixels():
    a = BitMatrix(np.ones((8, 8), np.uint8))
    assert noise_pixels(a, a) == 0
    assert noise_pixels(a, BitMatrix(np.zeros((8, 8), np.uint8))) == 64
    with pytest.raises(DimensionError):
        noise_pixels(a, BitMatrix(np.ones((4, 4), np.uint8)))


def test_psnr():
    a = flat(16, 16)
    assert psnr(a, a) == float("inf")
    b = GrayImage(a.pixels.astype(int) + 1)
    assert psnr(a, b) == pytest.approx(10 * np.log10(255**2))


def test_white_polarity_roundtrip():
    cover = gradient(256, 256)
    mark = random_mark(8, 8, 3, 20)
    plan = make_plan(283, 2, (256, 256), (8, 8), "selected", 0, polarity="white")
    out = embed(cover, mark, plan)
    assert extract(out, plan).recovered == mark
    assert WatermarkPlan.from_text(plan.to_text()).polarity == "white"


def test_lfsr_plan():
    plan = make_plan(0, 2, (256, 256), (8, 8), "random", 4, lfsr_degree=7)
    assert plan.period == 127 and plan.q == 0
    assert WatermarkPlan.from_text(plan.to_text()) == plan
    mark = random_mark(8, 8, 1, 30)
    assert extract(embed(flat(256, 256), mark, plan), plan).recovered == mark


# Round-trip invariant over synthetic covers, q in {283, 277}, k in {2, 5}, 10-54 black bits.
ROUNDTRIP_CASES = [(q, k, kind, black) for q in (283, 277) for k in (2, 5)
                   for kind in ("flat", "gradient", "checker") for black in (10, 32, 54)]


@pytest.mark.parametrize("q,k,kind,black", ROUNDTRIP_CASES)
def test_roundtrip_invariant_structured(q, k, kind, black):
    cover = cover_from_spec(f"synth:{kind}:256x256")
    mark = random_mark(8, 8, q + black, black)
    plan = make_plan(q, k, (256, 256), (8, 8), "selected", 0)
    assert noise_pixels(extract(embed(cover, mark, plan), plan).recovered, mark) == 0


@pytest.mark.parametrize("q", [283, 277])
@pytest.mark.parametrize("k", [2, 5])
def test_roundtrip_invariant_texture(q, k):
    failures = []
    for seed in range(12):
        black = (10, 20, 32, 44, 54)[seed % 5]
        cover = texture(256, 256, seed=500 + seed)
        mark = random_mark(8, 8, seed, black)
        plan = make_plan(q, k, (256, 256), (8, 8), "selected", 0)
        n = noise_pixels(extract(embed(cover, mark, plan), plan).recovered, mark)
        if n:
            failures.append((seed, black, n))
    assert failures == []


def test_pinned_shift_plans():
    plan = make_plan(277, 2, (256, 256), (8, 8))
    rep = plan.report()
    assert worst_shift(rep) == 46 and rep.values[46] == -1.0
    assert pin_shifts(plan, 3).shifts == (3,) * 64
    with pytest.raises(ParameterError):
        pin_shifts(plan, 92)


def test_synthetic_covers():
    assert flat(4, 3).pixels.shape == (3, 4)
    g = gradient(256, 2).pixels
    assert g[0, 0] == 0 and g[0, -1] == 255
    c = checker(256, 256).pixels
    assert c[0, 0] == 64 and c[0, 32] == 192 and c[32, 32] == 64
    t1, t2 = texture(64, 64, 5), texture(64, 64, 5)
    assert t1 == t2 and 16 <= t1.pixels.min() and t1.pixels.max() <= 239
    with pytest.raises(ParameterError):
        cover_from_spec("synth:plaid:8x8")
    with pytest.raises(ParameterError):
        cover_from_spec("synth:flat:8by8")
