import cmath

import pytest

from jtphom import scalar
from jtphom.classifier import (
    TranscriptMap, classify, gauge_equivalent, probe_inputs, probe_set, record_transcript,
    spot_check_pairs,
)
from jtphom.errors import InconsistentProbes, MissingProbe, NotAHomomorphism, UnrecognizedMultiplicative
from jtphom.families import (
    FamilyMap, FormI, FormII, FormIII, TildeVariant, canonical_suite,
    make_form_i, make_form_ii, make_form_iii, make_form_iv,
)
from jtphom.herm import E11, IDENTITY, ZERO, Herm2, Unitary2, sample_unitary
from jtphom.scalar import EtaTable, MultiplicativeModel, ScalarJtpHom

I = Unitary2.identity()


def test_probe_set_is_fixed_and_unique():
    probes = probe_set()
    assert len(probes) == 40
    assert len(set(probes)) == 40
    assert probe_set() == probes
    assert len(spot_check_pairs()) == 20


def test_identity_like_roundtrip():
    U0 = sample_unitary(99)
    report = classify(FamilyMap(make_form_ii(1, U0)))
    assert report.branch_path[-1] == "nondegenerate/identity"
    assert isinstance(report.fitted, FormII) and report.fitted.sign == 1
    assert report.fit_residual <= 1e-9
    # same U up to a global phase
    u, v = report.fitted.U.to_array(), U0.to_array()
    ph = (u.conj().T @ v)[0, 0]
    assert abs(abs(ph) - 1) <= 1e-9
    assert abs(u * ph - v).max() <= 1e-9


def test_conjugation_branch():
    report = classify(FamilyMap(make_form_iii(1, sample_unitary(5))))
    assert report.branch_path[-1] == "nondegenerate/conjugation"
    assert isinstance(report.fitted, FormIII)


def test_constant_identity_map():
    report = classify(lambda A: IDENTITY)
    assert "case1/constant" in report.branch_path
    fitted = report.fitted
    assert isinstance(fitted, FormI)
    for h in (fitted.hom1, fitted.hom2):
        assert h.psi.variant == "one" and h.eta == EtaTable(1, 1, 1)


def test_inverse_map():
    spec = make_form_iv(1, I, scalar.power(1, "nonzero"), TildeVariant.INV_A)
    report = classify(FamilyMap(spec))
    assert report.branch_path[-1] == "degenerate/non-commuting/inverse"
    assert report.fitted.tilde is TildeVariant.INV_A
    assert report.fitted.beta == scalar.power(1, "nonzero")


def test_negated_maps_flip_sign():
    report = classify(FamilyMap(make_form_iii(-1, I)))
    assert "PhiI=-I/negated" in report.branch_path
    assert report.fitted.sign == -1


@pytest.mark.parametrize("k", range(len(canonical_suite())))
def test_suite_roundtrip(k):
    spec = canonical_suite()[k]
    report = classify(FamilyMap(spec))
    assert type(report.fitted) is type(spec)
    assert gauge_equivalent(spec, report.fitted, 1e-8)
    assert report.fit_residual <= 1e-8
    assert report.branch_path


def test_gauge_equivalence_examples():
    U = sample_unitary(8)
    phase = cmath.exp(0.4j)
    Uph = Unitary2(*(z * phase for z in U.entries()))
    assert gauge_equivalent(make_form_ii(1, U), make_form_ii(1, Uph))
    assert not gauge_equivalent(make_form_ii(1, I), make_form_iii(1, I))
    h1, h2 = ScalarJtpHom(scalar.power(1)), ScalarJtpHom(scalar.power(2), EtaTable(1, -1, 1))
    swapped = Unitary2(U.u01, U.u00, U.u11, U.u10)
    assert gauge_equivalent(make_form_i(U, h1, h2), make_form_i(swapped, h2, h1))


def test_direct_and_inverse_forms_are_gauge_equivalent():
    # A^{-1} = Y conj(A) Y* / det A with Y = [[0, 1], [-1, 0]]; power(1) with
    # neg_sign +1 is |x|, so the matching beta on the conjugation side is sgn(x)
    Y = Unitary2(0, 1, -1, 0)
    inv = make_form_iv(1, I, scalar.power(1, "nonzero"), TildeVariant.INV_A)
    conj = make_form_iv(1, Y, MultiplicativeModel("one", None, "nonzero", -1), TildeVariant.CONJ_A)
    assert gauge_equivalent(inv, conj)


def test_only_probe_inputs_are_evaluated():
    seen = []
    spec = canonical_suite()[12]

    def spy(A):
        seen.append(A)
        return FamilyMap(spec)(A)

    classify(spy)
    assert set(seen) <= set(probe_inputs())


def test_transcript_classification_matches_map():
    spec = canonical_suite()[20]
    t = record_transcript(FamilyMap(spec))
    assert len(t) == len(probe_inputs())
    report = classify(t)
    assert gauge_equivalent(spec, report.fitted)


def test_missing_probe():
    t = TranscriptMap([(ZERO, ZERO)])
    with pytest.raises(MissingProbe):
        classify(t)


def test_not_a_homomorphism():
    with pytest.raises(NotAHomomorphism):
        classify(lambda A: A + E11 * 1e-3)


def test_corrupted_phi_zero_is_inconsistent():
    t = record_transcript(FamilyMap(make_form_ii(1, I)))
    t.table[ZERO] = Herm2.scalar(2.0)
    with pytest.raises(InconsistentProbes):
        classify(t)


def test_corrupted_power_samples_are_unrecognized():
    spec = make_form_i(I, ScalarJtpHom(scalar.power(2)), ScalarJtpHom(scalar.power(2)))
    t = record_transcript(FamilyMap(spec))
    t.table[Herm2.diag(3.0, 1.0)] = Herm2.scalar(9.5)
    with pytest.raises(UnrecognizedMultiplicative):
        classify(t)


def test_deterministic_reports():
    spec = canonical_suite()[27]
    r1, r2 = classify(FamilyMap(spec)), classify(FamilyMap(spec))
    assert r1 == r2
