//! Composition algebras built by Cayley–Dickson doubling.
//!
//! Doubling rule: (a,b)(c,d) = (ac + γ d̄b, da + bc̄). Basis element
//! e_{j+2^l} is e_j·e_{2^l}, so basis 0 is the unit and the generators are
//! e_1, e_2, e_4.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::exactla::{inertia, nullspace_rows, rint, Inertia, MatrixQ, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgLabel {
    R,
    C,
    H,
    O,
    #[serde(rename = "C_S")]
    CS,
    #[serde(rename = "H_S")]
    HS,
    #[serde(rename = "O_S")]
    OS,
}

impl AlgLabel {
    pub const ALL: [AlgLabel; 7] = [AlgLabel::R, AlgLabel::C, AlgLabel::H, AlgLabel::O, AlgLabel::CS, AlgLabel::HS, AlgLabel::OS];

    pub fn params(self) -> &'static [i8] {
        match self {
            AlgLabel::R => &[],
            AlgLabel::C => &[-1],
            AlgLabel::CS => &[1],
            AlgLabel::H => &[-1, -1],
            AlgLabel::HS => &[-1, 1],
            AlgLabel::O => &[-1, -1, -1],
            AlgLabel::OS => &[-1, -1, 1],
        }
    }

    pub fn dim(self) -> usize {
        1 << self.params().len()
    }

    pub fn is_split(self) -> bool {
        matches!(self, AlgLabel::CS | AlgLabel::HS | AlgLabel::OS)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AlgLabel::R => "R",
            AlgLabel::C => "C",
            AlgLabel::H => "H",
            AlgLabel::O => "O",
            AlgLabel::CS => "C_S",
            AlgLabel::HS => "H_S",
            AlgLabel::OS => "O_S",
        }
    }
}

impl fmt::Display for AlgLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgLabel {
    type Err = CdaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let k: String = s.chars().filter(|c| *c != '_').collect::<String>().to_ascii_uppercase();
        Ok(match k.as_str() {
            "R" => AlgLabel::R,
            "C" => AlgLabel::C,
            "H" => AlgLabel::H,
            "O" => AlgLabel::O,
            "CS" => AlgLabel::CS,
            "HS" => AlgLabel::HS,
            "OS" => AlgLabel::OS,
            _ => return Err(CdaError::UnknownLabel(s.to_string())),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CdaError {
    #[error("Cayley-Dickson parameters must be at most 3 signs of ±1")]
    BadParams,
    #[error("elements belong to different algebras")]
    MixedAlgebras,
    #[error("unknown algebra label `{0}`")]
    UnknownLabel(String),
}

/// Signed basis products: `entries[i*dim + j] = (σ, k)` with e_i e_j = σ e_k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductTable {
    pub dim: usize,
    pub entries: Vec<(i8, usize)>,
}

impl ProductTable {
    pub fn get(&self, i: usize, j: usize) -> (i8, usize) {
        self.entries[i * self.dim + j]
    }

    /// Signs s_i with e_i e_i = s_i · 1 (or 0 if the square is not a unit
    /// multiple, which never happens for the tables here).
    pub fn squares(&self) -> Vec<i8> {
        (0..self.dim).map(|i| match self.get(i, i) { (s, 0) => s, _ => 0 }).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompAlgebra {
    params: Vec<i8>,
    label: AlgLabel,
    table: ProductTable,
}

pub fn make_algebra(params: &[i8]) -> Result<CompAlgebra, CdaError> {
    if params.len() > 3 || params.iter().any(|&g| g != 1 && g != -1) {
        return Err(CdaError::BadParams);
    }
    let mut entries = vec![(1i8, 0usize)];
    let mut d = 1;
    for &g in params {
        let conj = |k: usize| if k == 0 { 1 } else { -1 };
        let n = 2 * d;
        let mut next = vec![(0i8, 0usize); n * n];
        for i in 0..n {
            for j in 0..n {
                next[i * n + j] = match (i < d, j < d) {
                    (true, true) => entries[i * d + j],
                    // (e_i,0)(0,e_j) = (0, e_j e_i)
                    (true, false) => {
                        let (s, k) = entries[(j - d) * d + i];
                        (s, k + d)
                    }
                    // (0,e_i)(e_j,0) = (0, e_i ē_j)
                    (false, true) => {
                        let (s, k) = entries[(i - d) * d + j];
                        (s * conj(j), k + d)
                    }
                    // (0,e_i)(0,e_j) = (γ ē_j e_i, 0)
                    (false, false) => {
                        let (s, k) = entries[(j - d) * d + (i - d)];
                        (s * g * conj(j - d), k)
                    }
                };
            }
        }
        entries = next;
        d = n;
    }
    let table = ProductTable { dim: d, entries };
    let label = label_from_invariants(&table);
    Ok(CompAlgebra { params: params.to_vec(), label, table })
}

/// Dimension plus norm inertia determine the algebra up to isomorphism.
fn label_from_invariants(t: &ProductTable) -> AlgLabel {
    let neg = t.squares().iter().skip(1).filter(|&&s| s == 1).count();
    match (t.dim, neg > 0) {
        (1, _) => AlgLabel::R,
        (2, false) => AlgLabel::C,
        (2, true) => AlgLabel::CS,
        (4, false) => AlgLabel::H,
        (4, true) => AlgLabel::HS,
        (8, false) => AlgLabel::O,
        _ => AlgLabel::OS,
    }
}

impl CompAlgebra {
    pub fn from_label(label: AlgLabel) -> Self {
        make_algebra(label.params()).expect("canonical parameters")
    }

    pub fn label(&self) -> AlgLabel {
        self.label
    }

    pub fn params(&self) -> &[i8] {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.table.dim
    }

    pub fn table(&self) -> &ProductTable {
        &self.table
    }

    pub fn basis_product(&self, i: usize, j: usize) -> (i8, usize) {
        self.table.get(i, j)
    }

    pub fn conj_sign(&self, i: usize) -> i8 {
        if i == 0 {
            1
        } else {
            -1
        }
    }

    /// ⟨e_i, e_i⟩ = Re(ē_i e_i); the basis is orthogonal.
    pub fn norm_sign(&self, i: usize) -> i8 {
        let (s, k) = self.table.get(i, i);
        debug_assert_eq!(k, 0);
        s * self.conj_sign(i)
    }

    pub fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = rint(1);
        v
    }

    pub fn mul_coeffs(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let (s, k) = self.table.get(i, j);
                let p = a * b;
                if s > 0 {
                    out[k] += p;
                } else {
                    out[k] -= p;
                }
            }
        }
        out
    }

    pub fn conj_coeffs(&self, x: &[Rational]) -> Vec<Rational> {
        x.iter().enumerate().map(|(i, v)| if i == 0 { v.clone() } else { -v }).collect()
    }

    pub fn inner_coeffs(&self, x: &[Rational], y: &[Rational]) -> Rational {
        x.iter()
            .zip(y)
            .enumerate()
            .filter(|(_, (a, b))| !a.is_zero() && !b.is_zero())
            .map(|(i, (a, b))| rint(self.norm_sign(i) as i64) * a * b)
            .sum()
    }

    /// Left multiplication x·(−) as a matrix; column b is x·e_b.
    pub fn lmat(&self, x: &[Rational]) -> MatrixQ {
        let cols: Vec<Vec<Rational>> = (0..self.dim()).map(|b| self.mul_coeffs(x, &self.unit(b))).collect();
        MatrixQ::from_rows(&cols).transpose()
    }

    pub fn rmat(&self, x: &[Rational]) -> MatrixQ {
        let cols: Vec<Vec<Rational>> = (0..self.dim()).map(|b| self.mul_coeffs(&self.unit(b), x)).collect();
        MatrixQ::from_rows(&cols).transpose()
    }

    /// D_{x,y} = [L_x,L_y] + [R_x,R_y] + [L_x,R_y].
    pub fn derivation_map_coeffs(&self, x: &[Rational], y: &[Rational]) -> MatrixQ {
        let (lx, ly, rx, ry) = (self.lmat(x), self.lmat(y), self.rmat(x), self.rmat(y));
        lx.commutator(&ly).add(&rx.commutator(&ry)).add(&lx.commutator(&ry))
    }

    /// The same operator through commutators and associators:
    /// D_{x,y}(z) = [[x,y],z] − 3((xy)z − x(yz)).
    pub fn derivation_map_assoc(&self, x: &[Rational], y: &[Rational]) -> MatrixQ {
        let d = self.dim();
        let xy = self.mul_coeffs(x, y);
        let yx = self.mul_coeffs(y, x);
        let c: Vec<Rational> = xy.iter().zip(&yx).map(|(a, b)| a - b).collect();
        let cols: Vec<Vec<Rational>> = (0..d)
            .map(|b| {
                let z = self.unit(b);
                let cz = self.mul_coeffs(&c, &z);
                let zc = self.mul_coeffs(&z, &c);
                let xy_z = self.mul_coeffs(&xy, &z);
                let x_yz = self.mul_coeffs(x, &self.mul_coeffs(y, &z));
                (0..d).map(|k| &cz[k] - &zc[k] - rint(3) * (&xy_z[k] - &x_yz[k])).collect()
            })
            .collect();
        MatrixQ::from_rows(&cols).transpose()
    }

    /// Canonical kernel basis of the Leibniz system over all basis pairs.
    pub fn derivation_basis(&self) -> Vec<MatrixQ> {
        leibniz_basis(self.dim(), false, |i, j| {
            let (s, k) = self.table.get(i, j);
            vec![(k, rint(s as i64))]
        })
    }

    pub fn norm_inertia(&self) -> Inertia {
        let d: Vec<Rational> = (0..self.dim()).map(|i| rint(self.norm_sign(i) as i64)).collect();
        inertia(&MatrixQ::diag(&d)).expect("diagonal is symmetric")
    }
}

/// Derivations of an algebra with structure `prod(i, j) = Σ c_k e_k`, as
/// `n×n` matrices whose column b is D(e_b). For a commutative product only
/// the pairs i ≤ j are needed.
pub fn leibniz_basis<P>(n: usize, commutative: bool, prod: P) -> Vec<MatrixQ>
where
    P: Fn(usize, usize) -> Vec<(usize, Rational)>,
{
    let products: Vec<Vec<(usize, Rational)>> = (0..n * n).map(|ij| prod(ij / n, ij % n)).collect();
    let var = |a: usize, b: usize| a * n + b;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in if commutative { i } else { 0 }..n {
            // D(e_i e_j) − D(e_i) e_j − e_i D(e_j) = 0, one row per output coordinate.
            let mut eqs: Vec<std::collections::BTreeMap<usize, Rational>> = vec![Default::default(); n];
            let mut push = |m: usize, v: usize, c: Rational| {
                let e = eqs[m].entry(v).or_insert_with(Rational::zero);
                *e += c;
            };
            for (k, c) in &products[i * n + j] {
                for m in 0..n {
                    push(m, var(m, *k), c.clone());
                }
            }
            for a in 0..n {
                for (m, c) in &products[a * n + j] {
                    push(*m, var(a, i), -c);
                }
                for (m, c) in &products[i * n + a] {
                    push(*m, var(a, j), -c);
                }
            }
            for e in eqs {
                let row: Vec<(usize, Rational)> = e.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    nullspace_rows(&rows, n * n).into_iter().map(|v| MatrixQ::unflatten(n, n, &v)).collect()
}

/// An element tied to its algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CElement {
    pub algebra: Arc<CompAlgebra>,
    pub coeffs: Vec<Rational>,
}

impl CElement {
    pub fn new(algebra: &Arc<CompAlgebra>, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), algebra.dim(), "coefficient length must match the algebra");
        CElement { algebra: algebra.clone(), coeffs }
    }

    pub fn unit(algebra: &Arc<CompAlgebra>, i: usize) -> Self {
        CElement::new(algebra, algebra.unit(i))
    }

    fn same(&self, o: &CElement) -> Result<(), CdaError> {
        if Arc::ptr_eq(&self.algebra, &o.algebra) || self.algebra.params == o.algebra.params {
            Ok(())
        } else {
            Err(CdaError::MixedAlgebras)
        }
    }
}

pub fn mul(x: &CElement, y: &CElement) -> Result<CElement, CdaError> {
    x.same(y)?;
    Ok(CElement::new(&x.algebra, x.algebra.mul_coeffs(&x.coeffs, &y.coeffs)))
}

pub fn conj(x: &CElement) -> CElement {
    CElement::new(&x.algebra, x.algebra.conj_coeffs(&x.coeffs))
}

pub fn real_part(x: &CElement) -> Rational {
    x.coeffs[0].clone()
}

/// ⟨x,y⟩ = Re(x̄y).
pub fn inner(x: &CElement, y: &CElement) -> Result<Rational, CdaError> {
    x.same(y)?;
    Ok(x.algebra.inner_coeffs(&x.coeffs, &y.coeffs))
}

pub fn derivation_map(x: &CElement, y: &CElement) -> Result<MatrixQ, CdaError> {
    x.same(y)?;
    Ok(x.algebra.derivation_map_coeffs(&x.coeffs, &y.coeffs))
}

pub fn derivation_basis(a: &CompAlgebra) -> Vec<MatrixQ> {
    a.derivation_basis()
}

/// Image of each basis element of `sub` as a signed basis unit of `sup`,
/// found by mapping the doubling generators to signed imaginary units and
/// checking the whole product table. The identity map is tried first.
pub fn find_embedding(sub: &CompAlgebra, sup: &ProductTable) -> Option<Vec<(i8, usize)>> {
    let gens: Vec<usize> = (0..sub.params.len()).map(|l| 1 << l).collect();
    let mut candidates: Vec<(i8, usize)> = Vec::new();
    for k in 1..sup.dim {
        candidates.push((1, k));
        candidates.push((-1, k));
    }
    let mut chosen = Vec::new();
    search(sub, sup, &gens, &candidates, &mut chosen)
}

fn search(sub: &CompAlgebra, sup: &ProductTable, gens: &[usize], cands: &[(i8, usize)], chosen: &mut Vec<(i8, usize)>) -> Option<Vec<(i8, usize)>> {
    if chosen.len() == gens.len() {
        let img = images(sup, chosen);
        return respects(sub, sup, &img).then_some(img);
    }
    let mut order: Vec<(i8, usize)> = cands.to_vec();
    // Prefer the prefix inclusion when it exists.
    let g = gens[chosen.len()];
    if g < sup.dim {
        order.sort_by_key(|&(s, k)| (k != g || s != 1) as u8);
    }
    for c in order {
        let sq = sup.get(c.1, c.1).0;
        if sq != sub.table.get(gens[chosen.len()], gens[chosen.len()]).0 {
            continue;
        }
        chosen.push(c);
        if let Some(img) = search(sub, sup, gens, cands, chosen) {
            return Some(img);
        }
        chosen.pop();
    }
    None
}

fn images(sup: &ProductTable, gens: &[(i8, usize)]) -> Vec<(i8, usize)> {
    let mut img = vec![(1i8, 0usize)];
    for &(gs, gk) in gens {
        let cur = img.clone();
        for &(s, k) in &cur {
            let (ps, pk) = sup.get(k, gk);
            img.push((s * gs * ps, pk));
        }
    }
    img
}

fn respects(sub: &CompAlgebra, sup: &ProductTable, img: &[(i8, usize)]) -> bool {
    let mut seen = vec![false; sup.dim];
    for &(_, k) in img {
        if std::mem::replace(&mut seen[k], true) {
            return false;
        }
    }
    let d = sub.dim();
    for i in 0..d {
        for j in 0..d {
            let (s, k) = sub.table.get(i, j);
            let (ps, pk) = sup.get(img[i].1, img[j].1);
            if pk != img[k].1 || img[i].0 * img[j].0 * ps != s * img[k].0 {
                return false;
            }
        }
    }
    true
}

/// Fano-plane presentation of the octonions: lines include {1,5,6}, and the
/// split form flips the sign of products between two units of {4,5,6,7}.
pub const FANO_LINES: [[usize; 3]; 7] = [[1, 2, 3], [1, 5, 6], [1, 4, 7], [2, 4, 6], [2, 5, 7], [3, 4, 5], [3, 6, 7]];
pub const FANO_SPLIT_SET: [usize; 4] = [4, 5, 6, 7];

fn fano_table(orient: u32, split: bool) -> ProductTable {
    let mut entries = vec![(0i8, 0usize); 64];
    for i in 0..8 {
        entries[i] = (1, i);
        entries[i * 8] = (1, i);
    }
    for i in 1..8 {
        entries[i * 8 + i] = (-1, 0);
    }
    for (l, line) in FANO_LINES.iter().enumerate() {
        let [a, b, c] = if orient >> l & 1 == 0 { *line } else { [line[1], line[0], line[2]] };
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            entries[x * 8 + y] = (1, z);
            entries[y * 8 + x] = (-1, z);
        }
    }
    if split {
        for &x in &FANO_SPLIT_SET {
            for &y in &FANO_SPLIT_SET {
                entries[x * 8 + y].0 *= -1;
            }
        }
    }
    ProductTable { dim: 8, entries }
}

/// The Fano view: the first line orientation (in a fixed enumeration)
/// whose table is isomorphic to the doubling table of 𝕆 (or 𝕆_S when
/// `split`). Returns the table and the isomorphism from the doubling basis.
pub fn fano_view(split: bool) -> Option<(ProductTable, Vec<(i8, usize)>)> {
    let target = CompAlgebra::from_label(if split { AlgLabel::OS } else { AlgLabel::O });
    (0..128u32).find_map(|o| {
        let t = fano_table(o, split);
        find_embedding(&target, &t).map(|iso| (t, iso))
    })
}
