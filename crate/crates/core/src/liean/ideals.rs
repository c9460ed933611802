//! Simple-ideal decomposition through the centroid.
//!
//! A centroid element Γ commutes with every ad_x and preserves a Cartan
//! subalgebra 𝔥 = ker ad_g (g generic). Its restriction S to 𝔥 satisfies
//! ad_{Sg} ad_h z = ad_g ad_{Sh} z for h ∈ 𝔥 and all z; on each simple
//! ideal S acts through the ideal's centroid (ℝ or ℂ). Solving these linear
//! conditions for a few generic z yields the centroid restricted to 𝔥,
//! whose primitive idempotents cut 𝔥, and hence the algebra, into simple
//! ideals. Everything is re-verified exactly at the end.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{nullspace_rows, Echelon, Field, Fp, MatrixQ, Poly, Rational, Rref, SparseRow, SpanSolver};
use crate::titslie::LieAlgebra;

use super::sub::{restrict, span_basis, to_sparse};
use super::{killing::killing_inertia, LieanError};

const SEED: u64 = 0x5eed_1dea;
const ATTEMPTS: usize = 6;
const PROBES: usize = 3;

struct Table<F> {
    n: usize,
    t: Vec<Vec<(u32, F)>>,
}

impl<F: Field> Table<F> {
    fn new(l: &LieAlgebra, conv: impl Fn(&Rational) -> Option<F>) -> Option<Self> {
        let n = l.dim();
        let mut t = vec![Vec::new(); n * n];
        for (i, j, v) in l.entries() {
            let mut fwd = Vec::with_capacity(v.len());
            for (k, c) in v {
                let x = conv(c)?;
                if !x.is_zero() {
                    fwd.push((*k as u32, x));
                }
            }
            t[j * n + i] = fwd.iter().map(|(k, x)| (*k, x.neg())).collect();
            t[i * n + j] = fwd;
        }
        Some(Table { n, t })
    }

    fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        let n = self.n;
        let mut out = vec![F::zero(); n];
        let ny: Vec<usize> = (0..n).filter(|&l| !y[l].is_zero()).collect();
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for &l in &ny {
                let e = &self.t[i * n + l];
                if e.is_empty() {
                    continue;
                }
                let f = x[i].mul(&y[l]);
                for (k, c) in e {
                    let cur = out[*k as usize].add(&f.mul(c));
                    out[*k as usize] = cur;
                }
            }
        }
        out
    }

    /// Rows of ad_x: entry (r, l) = coefficient of e_r in [x, e_l].
    fn ad_rows(&self, x: &[F]) -> Vec<SparseRow<F>> {
        let n = self.n;
        let mut rows: Vec<Vec<F>> = vec![vec![F::zero(); n]; n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for l in 0..n {
                for (k, c) in &self.t[i * n + l] {
                    let cur = rows[*k as usize][l].add(&x[i].mul(c));
                    rows[*k as usize][l] = cur;
                }
            }
        }
        rows.into_iter()
            .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
            .filter(|r: &SparseRow<F>| !r.is_empty())
            .collect()
    }
}

struct Centroid<F> {
    /// Basis of the Cartan subalgebra, as vectors of the algebra.
    h: Vec<Vec<F>>,
    /// Basis of the admissible S, each an r×r matrix in row-major order
    /// acting on 𝔥-coordinates (column i is S(h_i)).
    s: Vec<Vec<F>>,
}

fn draw(n: usize, rng: &mut ChaCha8Rng) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-6..=6)).collect()
}

fn centroid_on_cartan<F: Field>(
    tab: &Table<F>,
    g: &[F],
    probes: &[Vec<F>],
    kernel: impl Fn(&[SparseRow<F>], usize) -> Vec<Vec<F>>,
) -> Option<Centroid<F>> {
    let n = tab.n;
    let h = kernel(&tab.ad_rows(g), n);
    let r = h.len();
    if r == 0 {
        return None;
    }
    for a in 0..r {
        for b in a + 1..r {
            if tab.bracket(&h[a], &h[b]).iter().any(|v| !v.is_zero()) {
                return None;
            }
        }
    }
    let gamma = SpanSolver::new(n, &h).ok()?.solve(g).ok()?;
    let mut rows: Vec<SparseRow<F>> = Vec::new();
    for z in probes {
        let u: Vec<Vec<F>> = h.iter().map(|ha| tab.bracket(ha, z)).collect();
        let w: Vec<Vec<F>> = u.iter().map(|uj| tab.bracket(g, uj)).collect();
        for a in 0..r {
            let v: Vec<Vec<F>> = h.iter().map(|hj| tab.bracket(hj, &u[a])).collect();
            for m in 0..n {
                let mut row: SparseRow<F> = Vec::new();
                for j in 0..r {
                    for i in 0..r {
                        let mut c = gamma[i].mul(&v[j][m]);
                        if i == a {
                            c = c.sub(&w[j][m]);
                        }
                        if !c.is_zero() {
                            row.push((j * r + i, c));
                        }
                    }
                }
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let s = Rref::from_rows(r * r, &rows).nullspace();
    Some(Centroid { h, s })
}

fn to_field<F: Field>(v: &[i64]) -> Vec<F> {
    v.iter().map(|&x| F::from_i64(x)).collect()
}

/// Dimension of the centroid, computed modulo a prime. 1 certifies a simple
/// algebra whose centroid is the ground field.
fn centroid_dim_mod_p(l: &LieAlgebra, rng: &mut ChaCha8Rng) -> Option<usize> {
    let tab = Table::<Fp>::new(l, Fp::from_rational)?;
    let n = l.dim();
    for _ in 0..ATTEMPTS {
        let g = to_field::<Fp>(&draw(n, rng));
        let probes: Vec<Vec<Fp>> = (0..PROBES).map(|_| to_field(&draw(n, rng))).collect();
        if let Some(c) = centroid_on_cartan(&tab, &g, &probes, |rows, n| Rref::from_rows(n, rows).nullspace()) {
            return Some(c.s.len());
        }
    }
    None
}

/// Splits a semisimple algebra into its simple ideals. An algebra that is
/// simple over ℝ comes back as itself, including those whose centroid is ℂ.
pub fn decompose_ideals(l: &LieAlgebra) -> Result<Vec<LieAlgebra>, LieanError> {
    let bases = ideal_bases(l)?;
    if bases.len() == 1 {
        return Ok(vec![l.clone()]);
    }
    bases.iter().map(|b| restrict(l, b)).collect()
}

/// Bases, in ambient coordinates, of the simple ideals.
pub fn ideal_bases(l: &LieAlgebra) -> Result<Vec<Vec<Vec<Rational>>>, LieanError> {
    let n = l.dim();
    let whole = || {
        (0..n)
            .map(|i| {
                let mut e = vec![<Rational as Zero>::zero(); n];
                e[i] = Rational::from_integer(1.into());
                e
            })
            .collect::<Vec<_>>()
    };
    if killing_inertia(l).zero > 0 {
        return Err(LieanError::DegenerateKilling);
    }
    if n == 0 {
        return Ok(vec![]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    if centroid_dim_mod_p(l, &mut rng) == Some(1) {
        return Ok(vec![whole()]);
    }
    let tab = Table::<Rational>::new(l, |c| Some(c.clone())).expect("rational table");
    for _ in 0..ATTEMPTS {
        let g = to_field::<Rational>(&draw(n, &mut rng));
        let probes: Vec<Vec<Rational>> = (0..PROBES).map(|_| to_field(&draw(n, &mut rng))).collect();
        let Some(c) = centroid_on_cartan(&tab, &g, &probes, nullspace_rows) else { continue };
        if c.s.len() == 1 {
            return Ok(vec![whole()]);
        }
        if let Some(ideals) = split(l, &c, &mut rng) {
            return Ok(ideals);
        }
    }
    Err(LieanError::DecompositionFailed)
}

fn split(l: &LieAlgebra, c: &Centroid<Rational>, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<Vec<Rational>>>> {
    let r = c.h.len();
    for _ in 0..ATTEMPTS {
        let coef = draw(c.s.len(), rng);
        let mut flat = vec![<Rational as Zero>::zero(); r * r];
        for (s, k) in c.s.iter().zip(&coef) {
            for (x, y) in flat.iter_mut().zip(s) {
                *x += y * Rational::from_integer((*k).into());
            }
        }
        let s = MatrixQ::unflatten(r, r, &flat);
        let m = Poly::new(crate::exactla::minimal_polynomial(&s));
        if !m.is_square_free() {
            continue;
        }
        let mut factors: Vec<Poly> = m.rational_roots().iter().map(Poly::linear).collect();
        let lin = factors.iter().fold(Poly::one(), |acc, f| acc.mul(f));
        let rest = m.divrem(&lin).0;
        if rest.degree().unwrap_or(0) > 0 {
            factors.push(rest);
        }
        let mut parts = Vec::new();
        for f in &factors {
            let cof = m.divrem(f).0;
            let e = cof.mul(&cof.inverse_mod(f)?).divrem(&m).1;
            let p = e.eval_matrix(&s);
            let cols: Vec<Vec<Rational>> = (0..r).map(|i| p.col_dense(i)).collect();
            let hk: Vec<Vec<Rational>> = span_basis(r, &cols)
                .iter()
                .map(|coords| {
                    let mut v = vec![<Rational as Zero>::zero(); l.dim()];
                    for (hc, x) in c.h.iter().zip(coords) {
                        if !Zero::is_zero(x) {
                            for (vi, hi) in v.iter_mut().zip(hc) {
                                *vi += x * hi;
                            }
                        }
                    }
                    v
                })
                .collect();
            parts.push(ideal_closure(l, &hk));
        }
        if verify(l, &parts) {
            return Some(parts);
        }
    }
    None
}

/// Smallest ideal containing `seed`.
pub fn ideal_closure(l: &LieAlgebra, seed: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = l.dim();
    let mut ech = Echelon::new(n);
    let mut queue: Vec<Vec<Rational>> = Vec::new();
    for v in seed {
        if ech.insert(&to_sparse(v)) {
            queue.push(v.clone());
        }
    }
    let mut all = queue.clone();
    while let Some(v) = queue.pop() {
        for m in 0..n {
            let mut e = vec![<Rational as Zero>::zero(); n];
            e[m] = Rational::from_integer(1.into());
            let w = l.bracket(&e, &v).expect("dimensions agree");
            if w.iter().any(|x| !Zero::is_zero(x)) && ech.insert(&to_sparse(&w)) {
                queue.push(w.clone());
                all.push(w);
            }
        }
        if ech.rank() == n {
            break;
        }
    }
    span_basis(n, &all)
}

fn verify(l: &LieAlgebra, parts: &[Vec<Vec<Rational>>]) -> bool {
    let n = l.dim();
    if parts.iter().map(|p| p.len()).sum::<usize>() != n || parts.iter().any(|p| p.is_empty()) {
        return false;
    }
    let all: Vec<Vec<Rational>> = parts.iter().flatten().cloned().collect();
    if span_basis(n, &all).len() != n {
        return false;
    }
    for a in 0..parts.len() {
        for b in a + 1..parts.len() {
            for x in &parts[a] {
                for y in &parts[b] {
                    if l.bracket(x, y).expect("dimensions agree").iter().any(|v| !Zero::is_zero(v)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
