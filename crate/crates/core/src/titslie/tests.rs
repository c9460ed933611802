use super::*;
use crate::cda::{AlgLabel, CompAlgebra};
use crate::exactla::{rat, rint, Rational};
use crate::jordan::make_jordan;
use num_traits::Zero;

fn cell(a: AlgLabel, b: AlgLabel, eps: i8) -> TitsConstruction {
    let j = make_jordan(&CompAlgebra::from_label(b), eps).unwrap();
    TitsConstruction::new(&CompAlgebra::from_label(a), &j).unwrap()
}

#[test]
fn small_dimensions() {
    assert_eq!(cell(AlgLabel::R, AlgLabel::R, 1).lie.dim(), 3);
    assert_eq!(cell(AlgLabel::C, AlgLabel::C, 1).lie.dim(), 16);
    assert_eq!(cell(AlgLabel::H, AlgLabel::R, -1).lie.dim(), 21);
}

#[test]
fn dim_formula_all_pairs_small() {
    for a in AlgLabel::ALL {
        for b in [AlgLabel::R, AlgLabel::C, AlgLabel::CS] {
            let c = cell(a, b, -1);
            let (da, db) = (a.dim(), 3 + 3 * b.dim());
            assert_eq!(c.lie.dim(), c.n_der_a() + c.n_der_j() + (da - 1) * (db - 1));
        }
    }
}

#[test]
fn jacobi_small_cells() {
    let r = check_jacobi(&cell(AlgLabel::R, AlgLabel::R, 1).lie, JacobiMode::Full);
    assert_eq!((r.triples_checked, r.violation_count), (1, 0));
    let r = check_jacobi(&cell(AlgLabel::C, AlgLabel::C, 1).lie, JacobiMode::Full);
    assert_eq!((r.triples_checked, r.violation_count), (560, 0));
    for (a, b, eps) in [(AlgLabel::H, AlgLabel::CS, -1), (AlgLabel::HS, AlgLabel::H, 1), (AlgLabel::OS, AlgLabel::R, -1)] {
        let r = check_jacobi(&cell(a, b, eps).lie, JacobiMode::Full);
        assert!(r.ok(), "{a} {b} {eps}: {:?}", r.violations);
    }
}

#[test]
fn jacobi_detects_a_broken_bracket() {
    let l = cell(AlgLabel::C, AlgLabel::R, 1).lie;
    let mut entries: Vec<(usize, usize, SparseVec)> = l.entries().map(|(i, j, v)| (i, j, v.to_vec())).collect();
    entries[0].2[0].1 += rint(1);
    entries[0].2.retain(|(_, c)| !c.is_zero());
    let broken = LieAlgebra::from_entries(l.labels().to_vec(), None, entries).unwrap();
    assert!(!check_jacobi(&broken, JacobiMode::Full).ok());
}

#[test]
fn sample_mode_counts_and_is_seeded() {
    let l = cell(AlgLabel::C, AlgLabel::C, -1).lie;
    let a = check_jacobi(&l, JacobiMode::Sample { n: 200, seed: 4 });
    assert_eq!(a, check_jacobi(&l, JacobiMode::Sample { n: 200, seed: 4 }));
    assert_eq!(a.triples_checked, 200);
    assert!(a.ok());
}

#[test]
fn bracket_basics() {
    let l = cell(AlgLabel::H, AlgLabel::R, 1).lie;
    let n = l.dim();
    let x: Vec<Rational> = (0..n).map(|i| rat(i as i64 % 5 - 2, 3)).collect();
    assert!(l.bracket(&x, &x).unwrap().iter().all(|v| v.is_zero()));
    assert_eq!(l.bracket(&x, &x[1..]).err(), Some(TitsError::DimMismatch));
    for i in 0..n {
        for j in 0..n {
            let mut ei = vec![Rational::zero(); n];
            let mut ej = vec![Rational::zero(); n];
            ei[i] = rint(1);
            ej[j] = rint(1);
            let mut want = vec![Rational::zero(); n];
            for (k, c) in l.basis_bracket(i, j) {
                want[k] = c;
            }
            assert_eq!(l.bracket(&ei, &ej).unwrap(), want);
        }
    }
}

#[test]
fn complex_row_tensor_bracket_lands_in_der_j() {
    // 𝔸 = ℂ has the single imaginary unit e, with [e,e] = 0 and D_{e,e} = 0.
    let c = cell(AlgLabel::C, AlgLabel::H, 1);
    let j = &c.j;
    let tl = j.traceless_basis();
    let (q, r) = (0, 5);
    let v = c.lie.basis_bracket(c.tensor_index(1, q), c.tensor_index(1, r));
    let nda = c.n_der_a();
    assert!(v.iter().all(|(k, _)| *k >= nda && *k < nda + c.n_der_j()));
    let comm = j.lop(&tl[q]).commutator(&j.lop(&tl[r]));
    let mut m = crate::exactla::MatrixQ::zeros(j.dim(), j.dim());
    for (k, coef) in &v {
        m = m.add(&c.der_j[k - nda].scale(coef));
    }
    // ⟨e,e⟩ = 1, so the bracket is −[L_q, L_r].
    assert_eq!(m, comm.scale(&rint(-1)));
}

#[test]
fn grading_is_respected() {
    for (a, b) in [(AlgLabel::O, AlgLabel::R), (AlgLabel::HS, AlgLabel::C)] {
        let c = cell(a, b, -1);
        let (nda, ndj) = (c.n_der_a(), c.n_der_j());
        let block = |k: usize| if k < nda { 0 } else if k < nda + ndj { 1 } else { 2 };
        for (i, j, v) in c.lie.entries() {
            let allowed: &[u8] = match (block(i), block(j)) {
                (0, 0) => &[0],
                (1, 1) => &[1],
                (0, 1) => &[],
                (0, 2) | (1, 2) => &[2],
                _ => &[0, 1, 2],
            };
            assert!(v.iter().all(|(k, _)| allowed.contains(&(block(*k) as u8))), "({i},{j})");
        }
    }
}

#[test]
fn str0_dimensions_and_jacobi() {
    for (b, want) in [(AlgLabel::R, 8), (AlgLabel::C, 16), (AlgLabel::H, 35)] {
        let j = make_jordan(&CompAlgebra::from_label(b), -1).unwrap();
        let s = build_str0(&j).unwrap();
        assert_eq!(s.dim(), want);
        assert!(check_jacobi(&s, JacobiMode::Full).ok());
    }
}

#[test]
fn int_form_matches_rationals() {
    let l = cell(AlgLabel::O, AlgLabel::R, 1).lie;
    let f = l.int_form().expect("small denominators");
    let n = l.dim();
    for (i, j, v) in l.entries() {
        let ints: Vec<(u32, i64)> = f.table[i * n + j].clone();
        let back: Vec<(usize, Rational)> = ints.iter().map(|&(k, x)| (k as usize, rat(x, f.scale))).collect();
        assert_eq!(back, v.to_vec());
    }
}
