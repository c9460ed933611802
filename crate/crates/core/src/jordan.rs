//! Rank-3 Jordan algebras of η-Hermitian 3×3 matrices over a composition
//! algebra, η = diag(ε,1,1).
//!
//! Basis order: E11, E22, E33, then F_s(u) for slots s = 1,2,3 at matrix
//! positions (0,1), (0,2), (1,2) and u running over the base basis.
//! F_s(u) has u above the diagonal and ε·ū (slots 1,2) or ū (slot 3) below.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::cda::{leibniz_basis, AlgLabel, CompAlgebra};
use crate::exactla::{rint, MatrixQ, Rational, SpanSolver};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum JordanError {
    #[error("epsilon must be +1 or -1")]
    BadEpsilon,
    #[error("elements belong to different Jordan algebras")]
    MixedAlgebras,
    #[error("{{I, j, j∘j}} are linearly dependent")]
    DegenerateElement,
    #[error("element is not traceless")]
    NotTraceless,
}

const SLOTS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

type Entry = Vec<Rational>;
type Mat3 = [[Entry; 3]; 3];

#[derive(Clone, Debug)]
pub struct JordanAlgebra {
    base: Arc<CompAlgebra>,
    epsilon: i8,
    dim: usize,
    /// e_i ∘ e_j for all ordered pairs, sparse.
    table: Vec<Vec<(usize, Rational)>>,
    /// ⟨e_i, e_i⟩; the basis is orthogonal for the trace form.
    gram: Vec<Rational>,
}

impl PartialEq for JordanAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.base.params() == o.base.params() && self.epsilon == o.epsilon
    }
}

pub fn make_jordan(base: &CompAlgebra, epsilon: i8) -> Result<JordanAlgebra, JordanError> {
    if epsilon != 1 && epsilon != -1 {
        return Err(JordanError::BadEpsilon);
    }
    let d = base.dim();
    let dim = 3 + 3 * d;
    let mut j = JordanAlgebra { base: Arc::new(base.clone()), epsilon, dim, table: Vec::new(), gram: Vec::new() };
    let mats: Vec<Mat3> = (0..dim).map(|i| j.to_matrix(&j.unit(i))).collect();
    let mut table: Vec<Vec<(usize, Rational)>> = Vec::with_capacity(dim * dim);
    for a in 0..dim {
        for b in 0..dim {
            if b < a {
                let t: Vec<(usize, Rational)> = table[b * dim + a].clone();
                table.push(t);
                continue;
            }
            let v = j.from_matrix(&j.sym_product(&mats[a], &mats[b]));
            table.push(v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    j.table = table;
    j.gram = (0..dim).map(|i| j.trace_coeffs(&j.mul_coeffs(&j.unit(i), &j.unit(i)))).collect();
    Ok(j)
}

impl JordanAlgebra {
    pub fn base(&self) -> &CompAlgebra {
        &self.base
    }

    pub fn base_label(&self) -> AlgLabel {
        self.base.label()
    }

    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = rint(1);
        v
    }

    pub fn identity(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        for k in 0..3 {
            v[k] = rint(1);
        }
        v
    }

    /// Basis index of F_s(u), s ∈ {0,1,2}.
    pub fn off_index(&self, slot: usize, u: usize) -> usize {
        3 + slot * self.base.dim() + u
    }

    fn lower_factor(&self, slot: usize) -> i8 {
        if slot < 2 {
            self.epsilon
        } else {
            1
        }
    }

    pub fn to_matrix(&self, x: &[Rational]) -> Mat3 {
        let d = self.base.dim();
        let zero = || vec![Rational::zero(); d];
        let mut m: Mat3 = std::array::from_fn(|_| std::array::from_fn(|_| zero()));
        for k in 0..3 {
            m[k][k][0] = x[k].clone();
        }
        for (s, &(r, c)) in SLOTS.iter().enumerate() {
            let u: Vec<Rational> = (0..d).map(|i| x[self.off_index(s, i)].clone()).collect();
            let f = rint(self.lower_factor(s) as i64);
            m[c][r] = self.base.conj_coeffs(&u).into_iter().map(|v| v * &f).collect();
            m[r][c] = u;
        }
        m
    }

    /// Reads coordinates off an η-Hermitian matrix. Panics if the matrix is
    /// not η-Hermitian, which would mean the product left the algebra.
    pub fn from_matrix(&self, m: &Mat3) -> Vec<Rational> {
        let d = self.base.dim();
        let mut x = vec![Rational::zero(); self.dim];
        for k in 0..3 {
            assert!(m[k][k][1..].iter().all(|v| v.is_zero()), "diagonal entry is not real");
            x[k] = m[k][k][0].clone();
        }
        for (s, &(r, c)) in SLOTS.iter().enumerate() {
            let f = rint(self.lower_factor(s) as i64);
            let lower: Vec<Rational> = self.base.conj_coeffs(&m[r][c]).into_iter().map(|v| v * &f).collect();
            assert_eq!(lower, m[c][r], "matrix is not eta-Hermitian");
            for i in 0..d {
                x[self.off_index(s, i)] = m[r][c][i].clone();
            }
        }
        x
    }

    fn sym_product(&self, a: &Mat3, b: &Mat3) -> Mat3 {
        let d = self.base.dim();
        let half = Rational::new(1.into(), 2.into());
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut acc = vec![Rational::zero(); d];
                for k in 0..3 {
                    for p in [self.base.mul_coeffs(&a[i][k], &b[k][j]), self.base.mul_coeffs(&b[i][k], &a[k][j])] {
                        for (x, y) in acc.iter_mut().zip(p) {
                            *x += y;
                        }
                    }
                }
                acc.into_iter().map(|v| v * &half).collect()
            })
        })
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.table[i * self.dim + j]
    }

    pub fn mul_coeffs(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        let ys: Vec<(usize, &Rational)> = y.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for &(j, b) in &ys {
                let ab = a * b;
                for (k, c) in self.product(i, j) {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn trace_coeffs(&self, x: &[Rational]) -> Rational {
        &x[0] + &x[1] + &x[2]
    }

    /// ⟨x, y⟩ = Tr(x∘y).
    pub fn inner_coeffs(&self, x: &[Rational], y: &[Rational]) -> Rational {
        x.iter()
            .zip(y)
            .zip(&self.gram)
            .filter(|((a, b), _)| !a.is_zero() && !b.is_zero())
            .map(|((a, b), g)| a * b * g)
            .sum()
    }

    /// E11−E22, E22−E33, then every F_s(u).
    pub fn traceless_basis(&self) -> Vec<Vec<Rational>> {
        let mut out = Vec::with_capacity(self.dim - 1);
        for k in 0..2 {
            let mut v = vec![Rational::zero(); self.dim];
            v[k] = rint(1);
            v[k + 1] = rint(-1);
            out.push(v);
        }
        for i in 3..self.dim {
            out.push(self.unit(i));
        }
        out
    }

    /// Coordinates of a traceless element in `traceless_basis`.
    pub fn traceless_coords(&self, x: &[Rational]) -> Result<Vec<Rational>, JordanError> {
        if !self.trace_coeffs(x).is_zero() {
            return Err(JordanError::NotTraceless);
        }
        let mut c = Vec::with_capacity(self.dim - 1);
        c.push(x[0].clone());
        c.push(&x[0] + &x[1]);
        c.extend(x[3..].iter().cloned());
        Ok(c)
    }

    pub fn from_traceless_coords(&self, c: &[Rational]) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.dim];
        x[0] = c[0].clone();
        x[1] = &c[1] - &c[0];
        x[2] = -&c[1];
        x[3..].clone_from_slice(&c[2..]);
        x
    }

    /// Matrix of x ↦ j∘x.
    pub fn lop(&self, j: &[Rational]) -> MatrixQ {
        let mut m = MatrixQ::zeros(self.dim, self.dim);
        for b in 0..self.dim {
            for (a, v) in self.mul_coeffs(j, &self.unit(b)).into_iter().enumerate() {
                if !v.is_zero() {
                    m.set(a, b, v);
                }
            }
        }
        m
    }

    pub fn jder_basis(&self) -> Vec<MatrixQ> {
        leibniz_basis(self.dim, true, |i, j| self.product(i, j).to_vec())
    }

    /// N(j) from j³ − T j² + S j − N I = 0.
    pub fn cubic_norm_coeffs(&self, j: &[Rational]) -> Result<Rational, JordanError> {
        let j2 = self.mul_coeffs(j, j);
        let j3 = self.mul_coeffs(j, &j2);
        let basis = [j2, j.to_vec(), self.identity()];
        let mut s = SpanSolver::new(self.dim, &basis).map_err(|_| JordanError::DegenerateElement)?;
        let c = s.solve(&j3).expect("rank-3 elements satisfy their generic minimal relation");
        Ok(c[2].clone())
    }

    /// N(x) for any x. Degenerate points are handled by interpolating the
    /// cubic t ↦ N(x + t·g) along a fixed direction g.
    pub fn norm_coeffs(&self, x: &[Rational]) -> Rational {
        if let Ok(n) = self.cubic_norm_coeffs(x) {
            return n;
        }
        let g: Vec<Rational> = (0..self.dim).map(|i| rint(((i * 37 + 11) % 13) as i64 - 6).max(rint(1))).collect();
        let mut pts: Vec<(Rational, Rational)> = Vec::new();
        let mut t = 1i64;
        while pts.len() < 4 {
            let y: Vec<Rational> = x.iter().zip(&g).map(|(a, b)| a + b * rint(t)).collect();
            if let Ok(n) = self.cubic_norm_coeffs(&y) {
                pts.push((rint(t), n));
            }
            t += 1;
            assert!(t < 64, "no generic points on the interpolation line");
        }
        // Lagrange interpolation evaluated at 0.
        let mut acc = Rational::zero();
        for (i, (ti, ni)) in pts.iter().enumerate() {
            let mut w = ni.clone();
            for (k, (tk, _)) in pts.iter().enumerate() {
                if k != i {
                    w = w * tk / (tk - ti);
                }
            }
            acc += w;
        }
        acc
    }

    /// Full polarization of N: d_{IJK} with N(x) = Σ d_{IJK} x^I x^J x^K.
    pub fn d_tensor(&self) -> DTensor {
        let n = self.dim;
        let mut cache: HashMap<Vec<(usize, i64)>, Rational> = HashMap::new();
        let mut norm_of = |idx: &[usize]| -> Rational {
            let mut key: Vec<(usize, i64)> = Vec::new();
            for &i in idx {
                match key.iter_mut().find(|e| e.0 == i) {
                    Some(e) => e.1 += 1,
                    None => key.push((i, 1)),
                }
            }
            key.sort_unstable();
            if let Some(v) = cache.get(&key) {
                return v.clone();
            }
            let mut x = vec![Rational::zero(); n];
            for &(i, m) in &key {
                x[i] = rint(m);
            }
            let v = self.norm_coeffs(&x);
            cache.insert(key, v.clone());
            v
        };
        let mut entries = Vec::new();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let v = norm_of(&[a, b, c]) - norm_of(&[a, b]) - norm_of(&[a, c]) - norm_of(&[b, c])
                        + norm_of(&[a])
                        + norm_of(&[b])
                        + norm_of(&[c]);
                    if !v.is_zero() {
                        entries.push(([a, b, c], v / rint(6)));
                    }
                }
            }
        }
        DTensor { n, entries }
    }
}

/// Totally symmetric rank-3 tensor, stored on sorted index triples.
#[derive(Clone, Debug, PartialEq)]
pub struct DTensor {
    pub n: usize,
    pub entries: Vec<([usize; 3], Rational)>,
}

impl DTensor {
    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        let mut key = [i, j, k];
        key.sort_unstable();
        match self.entries.binary_search_by(|e| e.0.cmp(&key)) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Σ d_{IJK} x^I y^J z^K.
    pub fn eval(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for ([a, b, c], v) in &self.entries {
            let mut perms = vec![[*a, *b, *c], [*a, *c, *b], [*b, *a, *c], [*b, *c, *a], [*c, *a, *b], [*c, *b, *a]];
            perms.sort_unstable();
            perms.dedup();
            for [i, j, k] in perms {
                if !x[i].is_zero() && !y[j].is_zero() && !z[k].is_zero() {
                    acc += v * &x[i] * &y[j] * &z[k];
                }
            }
        }
        acc
    }
}

/// An element tied to its Jordan algebra.
#[derive(Clone, Debug)]
pub struct JElement {
    pub algebra: Arc<JordanAlgebra>,
    pub coeffs: Vec<Rational>,
}

impl PartialEq for JElement {
    fn eq(&self, o: &Self) -> bool {
        *self.algebra == *o.algebra && self.coeffs == o.coeffs
    }
}

impl JElement {
    pub fn new(algebra: &Arc<JordanAlgebra>, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), algebra.dim(), "coefficient length must match the algebra");
        JElement { algebra: algebra.clone(), coeffs }
    }

    pub fn unit(algebra: &Arc<JordanAlgebra>, i: usize) -> Self {
        JElement::new(algebra, algebra.unit(i))
    }

    pub fn identity(algebra: &Arc<JordanAlgebra>) -> Self {
        JElement::new(algebra, algebra.identity())
    }

    fn same(&self, o: &JElement) -> Result<(), JordanError> {
        if Arc::ptr_eq(&self.algebra, &o.algebra) || *self.algebra == *o.algebra {
            Ok(())
        } else {
            Err(JordanError::MixedAlgebras)
        }
    }
}

pub fn jprod(x: &JElement, y: &JElement) -> Result<JElement, JordanError> {
    x.same(y)?;
    Ok(JElement::new(&x.algebra, x.algebra.mul_coeffs(&x.coeffs, &y.coeffs)))
}

pub fn jtrace(x: &JElement) -> Rational {
    x.algebra.trace_coeffs(&x.coeffs)
}

pub fn jinner(x: &JElement, y: &JElement) -> Result<Rational, JordanError> {
    x.same(y)?;
    Ok(x.algebra.inner_coeffs(&x.coeffs, &y.coeffs))
}

pub fn traceless_basis(j: &Arc<JordanAlgebra>) -> Vec<JElement> {
    j.traceless_basis().into_iter().map(|c| JElement::new(j, c)).collect()
}

pub fn lop(x: &JElement) -> MatrixQ {
    x.algebra.lop(&x.coeffs)
}

pub fn jder_basis(j: &JordanAlgebra) -> Vec<MatrixQ> {
    j.jder_basis()
}

pub fn cubic_norm(x: &JElement) -> Result<Rational, JordanError> {
    x.algebra.cubic_norm_coeffs(&x.coeffs)
}

pub fn d_tensor(j: &JordanAlgebra) -> DTensor {
    j.d_tensor()
}
