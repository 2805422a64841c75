import random

import numpy as np
import pytest

from arbormat import (
    ExactMatrix,
    Orientation,
    Tree,
    VertexMap,
    ZZ,
    basis_witness,
    geometric_sum_is_zero,
    oriented_matrix,
    petrie_check,
    z2_similarity_to_companion,
)
from arbormat import _fast
from arbormat.errors import CapExceeded
from arbormat.harness import (
    OrientationPolicy,
    _sample_orientation,
    orientations_for,
    random_instances,
    run_det_search,
    run_path_graph_sweep,
    run_path_image_sweep,
    run_split_sign_sweep,
    run_theorem_sweep,
    run_witness_sweep,
    trees_for,
)


def random_sign_matrices(seed, count, n):
    rng = random.Random(seed)
    return np.array(
        [[[rng.randint(-1, 1) for _ in range(n)] for _ in range(n)] for _ in range(count)],
        dtype=np.int64,
    )


def instance_batch(seed, count, v):
    """Real transition matrices plus their instances."""
    out = []
    for f, o in random_instances(seed, count, v - 1, v - 1):
        out.append((f, o, oriented_matrix(f, o)))
    mats = np.array([tm.oriented.rows for _, _, tm in out], dtype=np.int64)
    return out, mats


class TestKernelAgreement:
    """The int64 batched route must coincide with the exact object route."""

    def test_charpoly_random(self):
        for n in (2, 4, 7):
            mats = random_sign_matrices(n, 40, n)
            got = _fast.batched_charpoly(mats)
            for k in range(mats.shape[0]):
                want = ExactMatrix(ZZ, mats[k].tolist()).charpoly().coeffs
                assert tuple(int(c) for c in got[k]) == want

    def test_charpoly_rejects_large_entries(self):
        with pytest.raises(ValueError):
            _fast.batched_charpoly(np.full((1, 3, 3), 2, dtype=np.int64))

    def test_geometric_sum_random(self):
        mats = random_sign_matrices(3, 30, 5)
        got = _fast.batched_geometric_sum_zero(mats)
        for k in range(30):
            assert bool(got[k]) == geometric_sum_is_zero(ExactMatrix(ZZ, mats[k].tolist()))

    def test_gf2_route_matches_invariant_factors(self):
        instances, mats = instance_batch(71, 30, 6)
        b = np.abs(mats)
        cp = _fast.batched_charpoly(b)
        kernel = np.all(cp % 2 == 1, axis=1) & _fast.batched_gf2_nonderogatory(b)
        for k, (f, o, tm) in enumerate(instances):
            assert bool(kernel[k]) == z2_similarity_to_companion(tm.unoriented)

    def test_gf2_route_on_non_instances(self):
        # also agree on arbitrary 0/1 matrices, where claims may fail
        rng = random.Random(9)
        mats = np.array(
            [[[rng.randint(0, 1) for _ in range(4)] for _ in range(4)] for _ in range(60)],
            dtype=np.int64,
        )
        cp = _fast.batched_charpoly(mats)
        kernel = np.all(cp % 2 == 1, axis=1) & _fast.batched_gf2_nonderogatory(mats)
        for k in range(60):
            want = z2_similarity_to_companion(ExactMatrix(ZZ, mats[k].tolist()))
            assert bool(kernel[k]) == want

    def test_matrix_build_matches_api(self):
        rng = random.Random(55)
        for v in (4, 5, 6):
            n = v - 1
            tree = rng.choice(trees_for(v))
            bits = rng.randrange(1 << n)
            table = _fast.orient_table(_fast.signed_path_table(tree), bits, n)
            images = _fast.cycle_images(v)
            first, second = _fast.oriented_endpoint_arrays(tree, bits)
            batch = _fast.build_oriented_batch(table, images, first, second)
            o = Orientation.from_int(bits, n)
            for idx in range(0, images.shape[0], 7):
                f = VertexMap(tree, [int(x) for x in images[idx][1:]])
                want = oriented_matrix(f, o).oriented.rows
                assert tuple(tuple(int(e) for e in row) for row in batch[idx]) == want

    def test_witness_kernel_matches_api(self):
        instances, mats = instance_batch(77, 25, 5)
        seeds = np.array(
            [
                f.tree.signed_path_vector(o, 1, f(1))
                for f, o, _ in instances
            ],
            dtype=np.int64,
        )
        gate, det, companion_ok, conjugation_ok = _fast.batched_witness(mats, seeds)
        for k, (f, o, tm) in enumerate(instances):
            assert bool(gate[k])
            w = basis_witness(f, o, 1, 1)
            assert int(det[k]) == w.determinant
            assert bool(companion_ok[k])
            assert bool(conjugation_ok[k]) == w.conjugates_over_rationals(tm.oriented)

    def test_petrie_kernel(self):
        rng = random.Random(31)
        mats = np.array(
            [[[rng.randint(-1, 1) for _ in range(4)] for _ in range(4)] for _ in range(80)],
            dtype=np.int64,
        )
        got = _fast.batched_petrie(mats)
        for k in range(80):
            assert bool(got[k]) == petrie_check(ExactMatrix(ZZ, mats[k].tolist()))

    def test_path_image_kernel(self):
        instances, mats = instance_batch(99, 20, 5)
        for k, (f, o, tm) in enumerate(instances):
            tree = f.tree
            bits = sum(1 << i for i, flag in enumerate(o.bits) if flag)
            table = _fast.orient_table(_fast.signed_path_table(tree), bits, tree.edge_count)
            images = np.array([[0] + list(f.image)], dtype=np.int64)
            single = mats[k : k + 1]
            got = _fast.batched_path_image_ok(table, images, single)
            assert bool(got[0])
            corrupted = single.copy()
            corrupted[0, 0, :] = -corrupted[0, 0, :]
            if not (corrupted[0] == single[0]).all():
                bad = _fast.batched_path_image_ok(table, images, corrupted)
                assert not bool(bad[0])


class TestSampling:
    def test_counter_determinism(self):
        a = _sample_orientation(7, "(()())", 3, 5)
        b = _sample_orientation(7, "(()())", 3, 5)
        assert a == b and 0 <= a < 32

    def test_policy_parsing(self):
        assert OrientationPolicy.parse("all").mode == "all"
        assert OrientationPolicy.parse("sample:16").sample_count == 16
        with pytest.raises(ValueError):
            OrientationPolicy.parse("some")

    def test_orientations_for(self):
        pol = OrientationPolicy("sample", 4)
        got = orientations_for(pol, 5, 7, "code")
        assert got[0] == 0 and len(got) == 5
        assert got == orientations_for(pol, 5, 7, "code")
        assert got != orientations_for(pol, 5, 8, "code") or got != orientations_for(
            pol, 5, 7, "other"
        )

    def test_random_instances_deterministic(self):
        a = [(f.tree.edges, f.image, o.bits) for f, o in random_instances(3, 10, 2, 5)]
        b = [(f.tree.edges, f.image, o.bits) for f, o in random_instances(3, 10, 2, 5)]
        assert a == b


class TestSweeps:
    def test_theorem_counts_and_pass(self):
        res = run_theorem_sweep([2, 3, 4], OrientationPolicy("all"), workers=1)
        assert res.all_pass
        assert res.per_n[2]["instances"] == 8
        assert res.per_n[3]["instances"] == 96
        assert res.per_n[4]["instances"] == 1152
        assert res.total_instances == 1256

    def test_worker_independence(self):
        one = run_theorem_sweep([2, 3], OrientationPolicy("all"), workers=1)
        two = run_theorem_sweep([2, 3], OrientationPolicy("all"), workers=2)
        assert one.per_n == two.per_n
        assert one.failures == two.failures
        assert one.total_instances == two.total_instances

    def test_cap(self):
        with pytest.raises(CapExceeded):
            run_theorem_sweep([12], OrientationPolicy("all"))

    def test_witness_sweep_small(self):
        res = run_witness_sweep([2, 3], OrientationPolicy("all"))
        assert res.all_pass
        # n=2: 1 tree x 4 orientations x 2 cycles x (2 steps x 3 starts)
        # n=3: 2 trees x 8 orientations x 6 cycles x (2 steps x 4 starts)
        assert res.total_witnesses == 8 * 6 + 96 * 8

    def test_path_image_sweep(self):
        res = run_path_image_sweep([2, 3], random_count=25, seed=5)
        assert res.all_pass
        assert res.exhaustive_instances == 104
        assert res.random_instances == 25

    def test_path_graph_sweep(self):
        res = run_path_graph_sweep([2, 3, 4])
        assert res.all_pass
        assert res.instances == 2 + 6 + 24

    def test_split_sign_sweep(self):
        res = run_split_sign_sweep([2, 3])
        assert res.all_pass
        assert res.instances == res.applicable + res.not_applicable
        assert res.with_additions > 0
        assert res.example_with_additions is not None
        assert res.example_not_applicable is not None

    def test_det_search(self):
        res = run_det_search([2, 3, 4], OrientationPolicy("canonical"))
        assert res.all_odd
        assert set(res.histogram) == {1}
        res_paths = run_det_search([2, 3, 4], OrientationPolicy("canonical"), paths_only=True)
        assert res_paths.all_unit

    def test_det_search_matches_exact_route(self):
        # batched histogram equals a per-witness tally via the exact path
        from collections import Counter

        from arbormat.theorems import iter_witness_determinants

        res = run_det_search([3], OrientationPolicy("canonical"))
        tally = Counter()
        for tree in trees_for(4):
            o = Orientation.canonical(3)
            for img in _fast.cycle_images(4):
                f = VertexMap(tree, [int(x) for x in img[1:]])
                for _, _, det in iter_witness_determinants(f, o):
                    tally[abs(det)] += 1
        assert dict(tally) == res.histogram


class TestChunking:
    def test_chunked_results_match_unchunked(self, monkeypatch):
        # force tiny chunks and compare against the one-shot run
        from arbormat import harness

        base = run_theorem_sweep([4], OrientationPolicy("canonical"), workers=1)
        monkeypatch.setattr(harness, "CYCLE_CHUNK", 7)
        small = run_theorem_sweep([4], OrientationPolicy("canonical"), workers=1)
        assert small.per_n == base.per_n
        assert small.all_pass and base.all_pass
        assert small.total_instances == base.total_instances == 3 * 24

        wit_base = run_witness_sweep([4], OrientationPolicy("canonical"))
        wit_small = run_witness_sweep([4], OrientationPolicy("canonical"))
        assert wit_base.total_witnesses == wit_small.total_witnesses


class TestWitnessFallback:
    def test_exact_fallback_matches(self):
        # force the exact path by calling it directly on a valid instance
        from arbormat.harness import _exact_witness_ok

        tree = Tree([(1, 2), (2, 3)])
        assert _exact_witness_ok(tree, 0, np.array([0, 2, 3, 1]), 1, 1)
