mod common;

use common::{close, fixture, hlawka_gap, popoviciu_gap, thm21_sides};
use opineq::claims::{evaluate, ClaimId, Instance};
use opineq::functions::builtin;

fn load(name: &str) -> Instance {
    Instance::load(fixture(name)).unwrap()
}

fn gap(claim: ClaimId, name: &str) -> f64 {
    evaluate(claim, &load(name)).unwrap().gap
}

#[test]
fn scalar_popoviciu_fixture() {
    let want = popoviciu_gap(|t| t * t, 0.0, 0.0, 3.0);
    assert!(close(want, 1.0, 1e-15));
    assert!(close(gap(ClaimId::Eq15, "eq15_pow2.json"), want, 1e-12));
}

#[test]
fn hlawka_fixtures() {
    let want = hlawka_gap(1.0, 1.0, -1.0);
    assert!(close(want, 2.0, 0.0));
    assert!(close(gap(ClaimId::HlawkaScalar, "hlawka_scalar.json"), want, 1e-12));
    // identity map in dimension 1 reduces to the scalar inequality
    assert!(close(gap(ClaimId::HlawkaOp, "hlawka_op_dim1.json"), want, 1e-12));
}

#[test]
fn gg_popoviciu_fixture() {
    // log form with f = exp: 3 cbrt(xyz) + x + y + z - 2 (sqrt(xz) + sqrt(yz) + sqrt(xy))
    let (x, y, z) = (1.0f64, 1.0f64, 4.0f64);
    let want = 3.0 * (x * y * z).cbrt() + x + y + z - 2.0 * ((x * z).sqrt() + (y * z).sqrt() + (x * y).sqrt());
    assert!(close(gap(ClaimId::GgPop, "gg_pop_exp.json"), want, 1e-12));
}

#[test]
fn cor2_constant_offset_fixture() {
    // dimension 1, identity map: gap = f(a) - f(a) - f(0) - f(0) = -2 f(0)
    let f = |t: f64| t * t - 1.0;
    let want = -2.0 * f(0.0);
    assert!(close(gap(ClaimId::Cor2, "cor2_sqmc.json"), want, 1e-12));
}

#[test]
fn jensen_trace_average_fixture() {
    // Phi(X) = tr(X)/2 I: <Phi(A^2)x,x> = 2, f(<Phi(A)x,x>) = 1, Phi(|A - 1|) = I
    let inst = load("jensen_trace_average.json");
    let b = evaluate(ClaimId::Thm1, &inst).unwrap();
    assert!(close(b.lhs, 2.0, 1e-12));
    assert!(close(b.rhs, 2.0, 1e-12));
    assert!(b.gap.abs() < 1e-12);
}

#[test]
fn family_witness_matches_scalar_witness() {
    let (lhs, rhs) = thm21_sides(|t| t * t, 1.0, 0.0, 0.0);
    let want = lhs - rhs;
    assert!(close(want, -4.0 / 9.0, 1e-15));
    assert!(close(gap(ClaimId::Cor5Pop, "cor5_family_witness.json"), want, 1e-12));
    assert!(close(gap(ClaimId::Thm21, "witness_thm21.json"), want, 1e-12));
}

#[test]
fn prp_fixtures() {
    // (1,0,0), f = t^2: 1/3 + 1/9 - (2/3)(1/4 + 0 + 1/4)
    let want = (1.0 + 0.0 + 0.0) / 3.0 + 1.0 / 9.0 - 2.0 / 3.0 * (0.25 + 0.0 + 0.25);
    assert!(close(want, 1.0 / 9.0, 1e-15));
    assert!(close(gap(ClaimId::Prp1, "witness_thm21.json"), want, 1e-12));

    // PRP2 with f = t^3 evaluates the PRP1 shape on f' = 3t^2
    let mut inst = load("prp1_start.json");
    inst.f = Some(builtin("pow:2").unwrap());
    let g1 = evaluate(ClaimId::Prp1, &inst).unwrap().gap;
    inst.f = Some(builtin("pow:3").unwrap());
    let g2 = evaluate(ClaimId::Prp2, &inst).unwrap().gap;
    assert!(close(g2, 3.0 * g1, 1e-10 * (1.0 + g1.abs())), "{g2} vs 3*{g1}");
}

#[test]
fn bohr_witness_fixture() {
    // A = diag(0,1), identity map, f = t^2: the verbatim bound fails by exactly 1
    assert!(close(gap(ClaimId::BohrSuper, "witness_bohr.json"), -1.0, 1e-12));
}
