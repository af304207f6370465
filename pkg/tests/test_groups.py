import numpy as np
import pytest

from sectorkit import groups
from sectorkit.errors import InvalidPermutation, OrderCapExceeded

# generator sets used throughout the suite
S3 = (3, [[1, 0, 2], [1, 2, 0]])
S4 = (4, [[1, 2, 3, 0], [1, 0, 2, 3]])
Z4 = (4, [[1, 2, 3, 0]])
D4 = (4, [[1, 2, 3, 0], [2, 1, 0, 3]])
A4 = (4, [[1, 2, 0, 3], [1, 0, 3, 2]])
# quaternions in their left regular representation on {1,-1,i,-i,j,-j,k,-k}
Q8 = (8, [[2, 3, 1, 0, 6, 7, 5, 4], [4, 5, 7, 6, 1, 0, 2, 3]])

ALL_GROUPS = {"S3": S3, "S4": S4, "Z4": Z4, "D4": D4, "A4": A4, "Q8": Q8}


def build(spec):
    degree, gens = spec
    return groups.enumerate_group(degree, gens)


def brute_force_closure(degree, gens):
    """Independent oracle: saturate the set under pairwise products."""
    elems = {tuple(range(degree))}
    elems.update(tuple(g) for g in gens)
    while True:
        new = {groups.compose(a, b) for a in elems for b in elems} - elems
        if not new:
            return elems
        elems.update(new)


def conjugation_oracle(g):
    """Partition the elements by pairwise conjugation over the mult table."""
    table = g.mult_table
    inv = g.inverse_table
    seen = {}
    for x in range(g.order):
        orbit = frozenset(table[table[h, x], inv[h]] for h in range(g.order))
        seen.setdefault(min(orbit), orbit)
    return set(seen.values())


def convolution_oracle(g, conj):
    """Full O(|G|^2) convolution count, divided out by the class size."""
    r = conj.class_count
    counts = np.zeros((r, r, g.order), dtype=np.int64)
    for a in range(g.order):
        for b in range(g.order):
            counts[conj.class_of[a], conj.class_of[b], g.mult(a, b)] += 1
    n = np.zeros((r, r, r), dtype=np.int64)
    for l in range(r):
        members = conj.members(l)
        per_element = counts[:, :, members]
        assert (per_element == per_element[:, :, :1]).all(), "not a class function"
        n[:, :, l] = per_element[:, :, 0]
    return n


class TestEnumeration:
    def test_trivial_group(self):
        g = groups.enumerate_group(1, [])
        assert g.order == 1

    @pytest.mark.parametrize("spec,order", [(S3, 6), (S4, 24), (Z4, 4), (D4, 8), (A4, 12), (Q8, 8)])
    def test_orders_against_bruteforce(self, spec, order):
        g = build(spec)
        assert g.order == order
        assert set(g.elements) == brute_force_closure(*spec)

    def test_identity_first(self):
        g = build(S4)
        assert g.elements[0] == (0, 1, 2, 3)

    def test_bad_permutation(self):
        with pytest.raises(InvalidPermutation):
            groups.enumerate_group(3, [[0, 0, 1]])

    def test_order_cap(self):
        with pytest.raises(OrderCapExceeded):
            groups.enumerate_group(4, S4[1], order_cap=10)

    def test_mult_table_closure(self):
        g = build(S3)
        table = g.mult_table
        assert table.shape == (6, 6)
        assert sorted(table[0]) == list(range(6))  # identity row


class TestConjugacy:
    def test_trivial(self):
        g = groups.enumerate_group(1, [])
        conj = groups.conjugacy_classes(g)
        assert conj.sizes == [1]

    def test_s3_sizes_and_order(self):
        g = build(S3)
        conj = groups.conjugacy_classes(g)
        # element 1 is the transposition generator, element 2 the 3-cycle
        assert conj.sizes == [1, 3, 2]

    def test_z4_singletons(self):
        g = build(Z4)
        conj = groups.conjugacy_classes(g)
        assert conj.sizes == [1, 1, 1, 1]

    @pytest.mark.parametrize("name", sorted(ALL_GROUPS))
    def test_against_conjugation_oracle(self, name):
        g = build(ALL_GROUPS[name])
        conj = groups.conjugacy_classes(g)
        ours = {frozenset(int(x) for x in conj.members(c)) for c in range(conj.class_count)}
        assert ours == conjugation_oracle(g)

    def test_class_zero_is_identity(self):
        for spec in ALL_GROUPS.values():
            conj = groups.conjugacy_classes(build(spec))
            assert conj.reps[0] == 0 and conj.sizes[0] == 1


class TestClassFusion:
    def test_trivial(self):
        g = groups.enumerate_group(1, [])
        fusion = groups.class_fusion(g, groups.conjugacy_classes(g))
        assert fusion.n.tolist() == [[[1]]]

    def test_s3_transposition_square(self):
        g = build(S3)
        conj = groups.conjugacy_classes(g)
        fusion = groups.class_fusion(g, conj)
        t = 1  # transposition class (contains element index 1)
        c3 = 2  # 3-cycle class
        assert fusion.n[t, t, 0] == 3
        assert fusion.n[t, t, c3] == 3
        assert fusion.n[t, t, t] == 0

    @pytest.mark.parametrize("name", sorted(ALL_GROUPS))
    def test_identity_class_is_unit(self, name):
        g = build(ALL_GROUPS[name])
        conj = groups.conjugacy_classes(g)
        fusion = groups.class_fusion(g, conj)
        r = conj.class_count
        assert np.array_equal(fusion.n[0], np.eye(r, dtype=np.int64))

    @pytest.mark.parametrize("name", sorted(ALL_GROUPS))
    def test_against_convolution_oracle(self, name):
        g = build(ALL_GROUPS[name])
        conj = groups.conjugacy_classes(g)
        fusion = groups.class_fusion(g, conj)
        assert np.array_equal(fusion.n, convolution_oracle(g, conj))

    @pytest.mark.parametrize("name", sorted(ALL_GROUPS))
    def test_size_sum_rule_and_symmetry(self, name):
        g = build(ALL_GROUPS[name])
        conj = groups.conjugacy_classes(g)
        n = groups.class_fusion(g, conj).n
        sizes = np.array(conj.sizes)
        assert np.array_equal(n, n.transpose(1, 0, 2))
        assert np.array_equal(np.einsum("ijl,l->ij", n, sizes), np.outer(sizes, sizes))

    @pytest.mark.parametrize("name", sorted(ALL_GROUPS))
    def test_fusion_matrices_commute_exactly(self, name):
        g = build(ALL_GROUPS[name])
        conj = groups.conjugacy_classes(g)
        fusion = groups.class_fusion(g, conj)
        for a in range(conj.class_count):
            for b in range(conj.class_count):
                ma, mb = fusion.matrix(a), fusion.matrix(b)
                assert np.array_equal(ma @ mb, mb @ ma)


# hand-entered textbook character table of S3 against class order
# (e, transpositions, 3-cycles)
S3_TABLE = {
    (1, (1.0, 1.0, 1.0)),
    (1, (1.0, -1.0, 1.0)),
    (2, (2.0, 0.0, -1.0)),
}


class TestCharacterTable:
    def pipeline(self, spec):
        g = build(spec)
        conj = groups.conjugacy_classes(g)
        fusion = groups.class_fusion(g, conj)
        return g, conj, fusion, groups.character_table(g, conj, fusion)

    def test_trivial_group(self):
        g = groups.enumerate_group(1, [])
        conj = groups.conjugacy_classes(g)
        table = groups.character_table(g, conj, groups.class_fusion(g, conj))
        assert table.dims == [1]
        assert np.allclose(table.s_matrix, [[1.0]])

    def test_s3_matches_textbook(self):
        _, _, _, table = self.pipeline(S3)
        assert table.dims == [1, 1, 2]
        rows = {(d, tuple(np.round(row.real, 8))) for d, row in zip(table.dims, table.chi)}
        assert rows == S3_TABLE
        assert np.abs(table.chi.imag).max() < 1e-9

    def test_s3_trivial_s_row(self):
        _, _, _, table = self.pipeline(S3)
        assert np.allclose(table.s_matrix[0].real, [0.40824829, 0.70710678, 0.57735027])

    def test_s3_sign_rep_central_charge(self):
        # sign representation on the transposition class: |K| chi / d = -3
        _, _, _, table = self.pipeline(S3)
        sign_row = [l for l in range(3) if table.dims[l] == 1 and table.chi[l, 1].real < 0][0]
        assert np.allclose(table.central_values[sign_row, 1], -3.0)

    @pytest.mark.parametrize("name", sorted(ALL_GROUPS))
    def test_orthogonality_and_unitarity(self, name):
        _, conj, _, table = self.pipeline(ALL_GROUPS[name])
        assert groups.character_orthogonality_residual(table) < 1e-9
        s = table.s_matrix
        assert np.abs(s @ s.conj().T - np.eye(conj.class_count)).max() < 1e-9

    @pytest.mark.parametrize("name", ["Z4"])
    def test_abelian_s_symmetric(self, name):
        _, _, _, table = self.pipeline(ALL_GROUPS[name])
        assert np.abs(table.s_matrix - table.s_matrix.T).max() < 1e-10

    def test_z4_against_dft_oracle(self):
        _, _, _, table = self.pipeline(Z4)
        omega = np.exp(2j * np.pi / 4)
        dft = np.array([[omega ** (k * j) for j in range(4)] for k in range(4)]) / 2.0
        assert np.abs(table.s_matrix - dft).max() < 1e-9

    @pytest.mark.parametrize("name,dims", [
        ("S3", [1, 1, 2]), ("S4", [1, 1, 2, 3, 3]), ("Z4", [1, 1, 1, 1]),
        ("D4", [1, 1, 1, 1, 2]), ("A4", [1, 1, 1, 3]), ("Q8", [1, 1, 1, 1, 2]),
    ])
    def test_dimensions(self, name, dims):
        _, _, _, table = self.pipeline(ALL_GROUPS[name])
        assert sorted(table.dims) == sorted(dims)
        assert sum(d * d for d in table.dims) == table.order


class TestRepFusion:
    def tables(self, spec):
        g = build(spec)
        conj = groups.conjugacy_classes(g)
        fusion = groups.class_fusion(g, conj)
        table = groups.character_table(g, conj, fusion)
        return fusion, table, groups.rep_fusion(table)

    @pytest.mark.parametrize("name", sorted(ALL_GROUPS))
    def test_trivial_rep_is_unit(self, name):
        _, table, repf = self.tables(ALL_GROUPS[name])
        r = len(table.dims)
        assert np.array_equal(repf.ntilde[0], np.eye(r, dtype=np.int64))
        assert np.array_equal(repf.ntilde, repf.ntilde.transpose(1, 0, 2))

    def test_s3_sign_squared(self):
        _, table, repf = self.tables(S3)
        sign = [l for l in range(3) if table.dims[l] == 1 and table.chi[l, 1].real < 0][0]
        expected = np.zeros(3, dtype=np.int64)
        expected[0] = 1
        assert np.array_equal(repf.ntilde[sign, sign], expected)

    def test_s3_two_dim_squared(self):
        _, table, repf = self.tables(S3)
        two = table.dims.index(2)
        # 2 x 2 = trivial + sign + 2-dim
        assert repf.ntilde[two, two].tolist() == [1, 1, 1]

    @pytest.mark.parametrize("name", sorted(ALL_GROUPS))
    def test_multiplicities(self, name):
        _, table, _ = self.tables(ALL_GROUPS[name])
        mults = groups.regular_rep_multiplicities(table)
        assert mults == table.dims


class TestSRelations:
    @pytest.mark.parametrize("name", sorted(ALL_GROUPS))
    def test_relations_residual(self, name):
        g = build(ALL_GROUPS[name])
        conj = groups.conjugacy_classes(g)
        fusion = groups.class_fusion(g, conj)
        table = groups.character_table(g, conj, fusion)
        repf = groups.rep_fusion(table)
        report = groups.verify_s_relations(table, fusion, repf)
        assert report["max_residual"] < 1e-9

    def test_trivial_residual_zero(self):
        g = groups.enumerate_group(1, [])
        conj = groups.conjugacy_classes(g)
        fusion = groups.class_fusion(g, conj)
        table = groups.character_table(g, conj, fusion)
        repf = groups.rep_fusion(table)
        assert groups.verify_s_relations(table, fusion, repf)["max_residual"] == 0.0

    def test_s3_oracle_both_sides(self):
        """Check the charge relation against values computed from the
        hand-entered table rather than the diagonalization output."""
        sizes = np.array([1.0, 3.0, 2.0])
        chi = np.array([[1, 1, 1], [1, -1, 1], [2, 0, -1]], dtype=float)
        dims = np.array([1.0, 1.0, 2.0])
        q = sizes[None, :] * chi / dims[:, None]
        g = build(S3)
        conj = groups.conjugacy_classes(g)
        n = groups.class_fusion(g, conj).n
        lhs = np.einsum("ki,kj->kij", q, q)
        rhs = np.einsum("ijc,kc->kij", n.astype(float), q)
        assert np.abs(lhs - rhs).max() < 1e-10


def test_group_report_runs():
    report = groups.group_report(*S3)
    assert report["order"] == 6
    assert report["relation_residuals"]["max_residual"] < 1e-9
    assert report["fusion_commutator_max"] == 0.0
