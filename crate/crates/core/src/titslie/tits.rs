use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use super::lie::{BasisLabel, LieAlgebra, Provenance, SparseVec};
use super::TitsError;
use crate::cda::CompAlgebra;
use crate::exactla::{rat, rint, MatrixQ, Rational, SpanSolver};
use crate::jordan::JordanAlgebra;

/// Accumulates sparse contributions, dropping cancelled terms.
#[derive(Default)]
struct Acc(BTreeMap<usize, Rational>);

impl Acc {
    fn add(&mut self, k: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_insert_with(Rational::zero);
        *e += c;
    }

    fn add_scaled(&mut self, offset: usize, v: &[Rational], f: &Rational) {
        if f.is_zero() {
            return;
        }
        for (k, c) in v.iter().enumerate() {
            if !c.is_zero() {
                self.add(offset + k, c * f);
            }
        }
    }

    fn finish(self) -> SparseVec {
        self.0.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

fn solver(mats: &[MatrixQ]) -> Result<SpanSolver, TitsError> {
    let n = mats.first().map_or(0, |m| m.rows() * m.cols());
    let flat: Vec<Vec<Rational>> = mats.iter().map(|m| m.flatten()).collect();
    SpanSolver::new(n, &flat).map_err(|_| TitsError::SpanResidual("derivation basis"))
}

fn coords(s: &mut SpanSolver, m: &MatrixQ, what: &'static str) -> Result<Vec<Rational>, TitsError> {
    if s.is_empty() {
        return if m.is_zero() { Ok(vec![]) } else { Err(TitsError::SpanResidual(what)) };
    }
    s.solve(&m.flatten()).map_err(|_| TitsError::SpanResidual(what))
}

/// The Tits construction together with the component data needed to
/// locate sub-constructions inside it.
pub struct TitsConstruction {
    pub a: CompAlgebra,
    pub j: Arc<JordanAlgebra>,
    pub der_a: Vec<MatrixQ>,
    pub der_j: Vec<MatrixQ>,
    pub lie: LieAlgebra,
    der_a_solver: SpanSolver,
}

impl TitsConstruction {
    pub fn new(a: &CompAlgebra, j: &JordanAlgebra) -> Result<Self, TitsError> {
        let da = a.derivation_basis();
        let dj = j.jder_basis();
        let (nda, ndj) = (da.len(), dj.len());
        let nim = a.dim() - 1;
        let tl = j.traceless_basis();
        let ntl = tl.len();
        let mut sa = solver(&da)?;
        let mut sj = solver(&dj)?;

        // Der(𝔸) and Der(𝔍) internal brackets.
        let mut da_br = vec![vec![Vec::new(); nda]; nda];
        for p in 0..nda {
            for q in p + 1..nda {
                da_br[p][q] = coords(&mut sa, &da[p].commutator(&da[q]), "Der(A) commutator")?;
            }
        }
        let mut dj_br = vec![vec![Vec::new(); ndj]; ndj];
        for p in 0..ndj {
            for q in p + 1..ndj {
                dj_br[p][q] = coords(&mut sj, &dj[p].commutator(&dj[q]), "Der(J) commutator")?;
            }
        }
        // Actions on the tensor factors; imaginary units are basis 1..dim.
        let da_act: Vec<Vec<Vec<Rational>>> =
            da.iter().map(|d| (1..a.dim()).map(|x| d.col_dense(x)[1..].to_vec()).collect()).collect();
        let dj_act: Vec<Vec<Vec<Rational>>> = dj
            .iter()
            .map(|d| tl.iter().map(|t| j.traceless_coords(&d.mul_vec(t)).expect("derivations preserve the trace")).collect())
            .collect();
        // Mixed-bracket ingredients.
        let mut d_ab = vec![vec![Vec::new(); nim + 1]; nim + 1];
        let mut comm_ab = vec![vec![Vec::new(); nim + 1]; nim + 1];
        for x in 1..a.dim() {
            for y in x + 1..a.dim() {
                let (ex, ey) = (a.unit(x), a.unit(y));
                d_ab[x][y] = coords(&mut sa, &a.derivation_map_coeffs(&ex, &ey), "D_{x,y}")?;
                let xy = a.mul_coeffs(&ex, &ey);
                let yx = a.mul_coeffs(&ey, &ex);
                let c: Vec<Rational> = xy.iter().zip(&yx).map(|(p, q)| p - q).collect();
                debug_assert!(c[0].is_zero());
                comm_ab[x][y] = c[1..].to_vec();
            }
        }
        let lops: Vec<MatrixQ> = tl.iter().map(|t| j.lop(t)).collect();
        let mut gram = vec![vec![Rational::zero(); ntl]; ntl];
        let mut l_qr = vec![vec![Vec::new(); ntl]; ntl];
        let mut prod_qr = vec![vec![Vec::new(); ntl]; ntl];
        let third = rat(1, 3);
        for q in 0..ntl {
            for r in q..ntl {
                let g = j.inner_coeffs(&tl[q], &tl[r]);
                let mut p = j.mul_coeffs(&tl[q], &tl[r]);
                for k in 0..3 {
                    p[k] -= &g * &third;
                }
                prod_qr[q][r] = j.traceless_coords(&p).expect("traceless by construction");
                prod_qr[r][q] = prod_qr[q][r].clone();
                gram[q][r] = g.clone();
                gram[r][q] = g;
                if q != r {
                    l_qr[q][r] = coords(&mut sj, &lops[q].commutator(&lops[r]), "[L_j1, L_j2]")?;
                }
            }
        }

        let mut labels: Vec<BasisLabel> = (0..nda).map(BasisLabel::DerA).collect();
        labels.extend((0..ndj).map(BasisLabel::DerJ));
        for x in 1..a.dim() {
            labels.extend((0..ntl).map(|q| BasisLabel::Tensor(x, q)));
        }
        let t0 = nda + ndj;
        let tidx = |x: usize, q: usize| t0 + (x - 1) * ntl + q;
        let twelfth = rat(1, 12);
        let half = rat(1, 2);
        let provenance = Some(Provenance { a: a.label(), b: j.base_label(), epsilon: j.epsilon() });

        let lie = LieAlgebra::from_fn(labels.clone(), provenance, |i, k| {
            let mut acc = Acc::default();
            match (labels[i], labels[k]) {
                (BasisLabel::DerA(p), BasisLabel::DerA(q)) => acc.add_scaled(0, &da_br[p][q], &rint(1)),
                (BasisLabel::DerJ(p), BasisLabel::DerJ(q)) => acc.add_scaled(nda, &dj_br[p][q], &rint(1)),
                (BasisLabel::DerA(p), BasisLabel::Tensor(x, q)) => {
                    for (y, c) in da_act[p][x - 1].iter().enumerate() {
                        acc.add(tidx(y + 1, q), c.clone());
                    }
                }
                (BasisLabel::DerJ(p), BasisLabel::Tensor(x, q)) => {
                    for (r, c) in dj_act[p][q].iter().enumerate() {
                        acc.add(tidx(x, r), c.clone());
                    }
                }
                (BasisLabel::Tensor(x, q), BasisLabel::Tensor(y, r)) => {
                    // (1/12)⟨j1,j2⟩ D_{h1,h2} − ⟨h1,h2⟩[L_j1,L_j2] + ½[h1,h2]⊗(j1∘j2 − ⅓⟨j1,j2⟩I)
                    let g = &gram[q][r];
                    if x != y {
                        let (lo, hi, s) = if x < y { (x, y, rint(1)) } else { (y, x, rint(-1)) };
                        acc.add_scaled(0, &d_ab[lo][hi], &(g * &twelfth * &s));
                        let f = &half * &s;
                        for (z, c) in comm_ab[lo][hi].iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            for (t, v) in prod_qr[q][r].iter().enumerate() {
                                if !v.is_zero() {
                                    acc.add(tidx(z + 1, t), c * v * &f);
                                }
                            }
                        }
                    } else if q != r {
                        let hh = rint(a.norm_sign(x) as i64);
                        let (lo, hi, s) = if q < r { (q, r, rint(1)) } else { (r, q, rint(-1)) };
                        acc.add_scaled(nda, &l_qr[lo][hi], &(-hh * s));
                    }
                }
                _ => {}
            }
            acc.finish()
        });
        Ok(TitsConstruction { a: a.clone(), j: Arc::new(j.clone()), der_a: da, der_j: dj, lie, der_a_solver: sa })
    }

    pub fn n_der_a(&self) -> usize {
        self.der_a.len()
    }

    pub fn n_der_j(&self) -> usize {
        self.der_j.len()
    }

    pub fn n_traceless(&self) -> usize {
        self.j.dim() - 1
    }

    /// Index of e_x ⊗ t_q, x a 1-based imaginary unit.
    pub fn tensor_index(&self, x: usize, q: usize) -> usize {
        self.n_der_a() + self.n_der_j() + (x - 1) * self.n_traceless() + q
    }

    /// D_{x,y} for elements of 𝔸 as a vector of the Lie algebra.
    pub fn der_a_vector(&mut self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, TitsError> {
        let d = self.a.derivation_map_coeffs(x, y);
        let c = coords(&mut self.der_a_solver, &d, "D_{x,y}")?;
        let mut v = vec![Rational::zero(); self.lie.dim()];
        v[..c.len()].clone_from_slice(&c);
        Ok(v)
    }
}

pub fn build_tits(a: &CompAlgebra, j: &JordanAlgebra) -> Result<LieAlgebra, TitsError> {
    Ok(TitsConstruction::new(a, j)?.lie)
}

/// Der(𝔍) ∔ L(𝔍′): brackets [D,D'] commutator, [D, L_t] = L_{Dt},
/// [L_t, L_u] ∈ Der(𝔍).
pub fn build_str0(j: &JordanAlgebra) -> Result<LieAlgebra, TitsError> {
    let dj = j.jder_basis();
    let ndj = dj.len();
    let tl = j.traceless_basis();
    let ntl = tl.len();
    let mut sj = solver(&dj)?;
    let lops: Vec<MatrixQ> = tl.iter().map(|t| j.lop(t)).collect();
    let mut labels: Vec<BasisLabel> = (0..ndj).map(BasisLabel::DerJ).collect();
    labels.extend((0..ntl).map(BasisLabel::Lop));
    let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    for p in 0..ndj {
        for q in p + 1..ndj {
            let c = coords(&mut sj, &dj[p].commutator(&dj[q]), "Der(J) commutator")?;
            table.insert((p, q), c.into_iter().enumerate().collect());
        }
        for (q, t) in tl.iter().enumerate() {
            let c = j.traceless_coords(&dj[p].mul_vec(t)).expect("derivations preserve the trace");
            table.insert((p, ndj + q), c.into_iter().enumerate().map(|(k, v)| (ndj + k, v)).collect());
        }
    }
    for q in 0..ntl {
        for r in q + 1..ntl {
            let c = coords(&mut sj, &lops[q].commutator(&lops[r]), "[L_j1, L_j2]")?;
            table.insert((ndj + q, ndj + r), c.into_iter().enumerate().collect());
        }
    }
    Ok(LieAlgebra::from_fn(labels, None, |i, k| table.remove(&(i, k)).unwrap_or_default()))
}
