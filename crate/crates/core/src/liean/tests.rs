use super::*;
use crate::cda::{AlgLabel, CompAlgebra};
use crate::exactla::{rint, Rational};
use crate::jordan::make_jordan;
use crate::titslie::build_tits;

fn cell(a: AlgLabel, b: AlgLabel, eps: i8) -> LieAlgebra {
    let j = make_jordan(&CompAlgebra::from_label(b), eps).unwrap();
    build_tits(&CompAlgebra::from_label(a), &j).unwrap()
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![rint(0); n];
    v[i] = rint(1);
    v
}

#[test]
fn killing_signs_rank_one() {
    let c = Catalog::builtin();
    let so3 = analyze(&cell(AlgLabel::R, AlgLabel::R, 1), &c).unwrap();
    assert_eq!((so3.killing_inertia.plus, so3.killing_inertia.minus), (0, 3));
    assert_eq!(so3.name(), "so(3)");
    let sl2 = analyze(&cell(AlgLabel::R, AlgLabel::R, -1), &c).unwrap();
    assert_eq!((sl2.killing_inertia.plus, sl2.killing_inertia.minus), (2, 1));
    assert_eq!(sl2.name(), "sl(2,R)");
    assert!(so3.float_check && sl2.float_check);
}

#[test]
fn killing_is_invariant() {
    let l = cell(AlgLabel::C, AlgLabel::R, -1);
    let b = killing(&l);
    let n = l.dim();
    for x in 0..n {
        let ad = l.ad(&unit(n, x));
        // B([x,y],z) + B(y,[x,z]) = 0  ⇔  ad_xᵀ B + B ad_x = 0
        assert!(ad.transpose().mul(&b).add(&b.mul(&ad)).is_zero());
    }
}

#[test]
fn products_split_into_ideals() {
    let c = Catalog::builtin();
    let a = analyze(&cell(AlgLabel::C, AlgLabel::C, 1), &c).unwrap();
    assert_eq!(a.ideals, vec![(8, -8), (8, -8)]);
    assert_eq!(a.name(), "su(3)xsu(3)");
    let a = analyze(&cell(AlgLabel::C, AlgLabel::C, -1), &c).unwrap();
    assert_eq!(a.ideals, vec![(8, 0), (8, 0)]);
    assert_eq!(a.name(), "su(2,1)xsu(2,1)");
    let a = analyze(&cell(AlgLabel::CS, AlgLabel::CS, 1), &c).unwrap();
    assert_eq!(a.ideals, vec![(8, 2), (8, 2)]);
}

#[test]
fn complex_type_stays_simple() {
    let c = Catalog::builtin();
    let a = analyze(&cell(AlgLabel::CS, AlgLabel::C, 1), &c).unwrap();
    assert_eq!((a.dim, a.chi, a.ideals.clone()), (16, 0, vec![(16, 0)]));
    assert_eq!(a.name(), "sl(3,C)");
}

#[test]
fn middle_sized_cells() {
    let c = Catalog::builtin();
    for (a, b, eps, name) in [
        (AlgLabel::H, AlgLabel::R, 1, "usp(6)"),
        (AlgLabel::HS, AlgLabel::R, 1, "sp(6,R)"),
        (AlgLabel::H, AlgLabel::R, -1, "usp(4,2)"),
        (AlgLabel::O, AlgLabel::R, 1, "f4(-52)"),
        (AlgLabel::CS, AlgLabel::H, 1, "su*(6)"),
    ] {
        assert_eq!(analyze(&cell(a, b, eps), &c).unwrap().name(), name, "{a} {b} {eps}");
    }
}

#[test]
fn centralizer_extremes() {
    let l = cell(AlgLabel::C, AlgLabel::C, 1);
    let n = l.dim();
    let all: Vec<_> = (0..n).map(|i| unit(n, i)).collect();
    assert_eq!(centralizer(&l, &all).unwrap().dim(), 0);
    let z = centralizer(&l, &[]).unwrap();
    assert_eq!((z.dim(), z.chi()), (n, -16));
}

#[test]
fn centralizer_of_an_ideal_is_the_complement() {
    let l = cell(AlgLabel::C, AlgLabel::C, -1);
    let ideals = ideal_bases(&l).unwrap();
    assert_eq!(ideals.len(), 2);
    let first = ideal_closure(&l, &ideals[0][..1]);
    assert_eq!(first.len(), 8);
    let c = centralizer(&l, &first).unwrap();
    assert_eq!(first.len() + c.dim(), l.dim());
    assert_eq!(c.chi(), 0);
}

#[test]
fn integer_and_rational_killing_agree() {
    let l = cell(AlgLabel::H, AlgLabel::CS, -1);
    assert!(l.int_form().is_some());
    let n = l.dim();
    let b = killing(&l);
    for i in (0..n).step_by(7) {
        for j in (0..n).step_by(5) {
            let ai = l.ad(&unit(n, i));
            let aj = l.ad(&unit(n, j));
            assert_eq!(b.get(i, j), ai.mul(&aj).trace(), "{i} {j}");
        }
    }
}

#[test]
fn centralizer_of_so3_in_su3() {
    // The C-row Tits algebra over R is su(3) ⊃ Der(J3(R)) = so(3); the
    // commutant of that so(3) is trivial.
    let l = cell(AlgLabel::C, AlgLabel::R, 1);
    let n = l.dim();
    let der: Vec<_> = l
        .labels()
        .iter()
        .enumerate()
        .filter(|(_, b)| matches!(b, crate::titslie::BasisLabel::DerJ(_)))
        .map(|(i, _)| unit(n, i))
        .collect();
    assert_eq!(der.len(), 3);
    assert_eq!(centralizer(&l, &der).unwrap().dim(), 0);
}

#[test]
fn non_closed_subspace_is_rejected() {
    let l = cell(AlgLabel::R, AlgLabel::R, 1);
    let n = l.dim();
    assert_eq!(closed_basis(&l, &[unit(n, 0), unit(n, 1)]).unwrap_err(), LieanError::NotSubalgebra);
}

#[test]
fn abelian_is_degenerate() {
    use crate::titslie::BasisLabel;
    let ab = LieAlgebra::from_fn((0..2).map(BasisLabel::Sub).collect(), None, |_, _| Vec::new());
    assert_eq!(character(&ab).unwrap_err(), LieanError::DegenerateKilling);
    assert_eq!(analyze(&ab, &Catalog::builtin()).unwrap_err(), LieanError::DegenerateKilling);
}
