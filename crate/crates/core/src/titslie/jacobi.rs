use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lie::{IntForm, LieAlgebra};
use crate::exactla::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JacobiMode {
    Full,
    Sample { n: u64, seed: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiReport {
    pub triples_checked: u64,
    pub violation_count: u64,
    /// The first few violating triples, for diagnostics.
    pub violations: Vec<[usize; 3]>,
}

impl JacobiReport {
    pub fn ok(&self) -> bool {
        self.violation_count == 0
    }

    fn merge(mut self, o: JacobiReport) -> JacobiReport {
        self.triples_checked += o.triples_checked;
        self.violation_count += o.violation_count;
        self.violations.extend(o.violations);
        self.violations.sort_unstable();
        self.violations.truncate(MAX_LISTED);
        self
    }
}

const MAX_LISTED: usize = 32;

/// Checks [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]] = 0 on basis
/// triples i < j < k, exactly.
pub fn check_jacobi(l: &LieAlgebra, mode: JacobiMode) -> JacobiReport {
    let n = l.dim();
    match mode {
        JacobiMode::Full => (0..n)
            .into_par_iter()
            .map(|i| {
                let mut ctx = Ctx::new(l);
                let mut rep = JacobiReport::default();
                for j in i + 1..n {
                    for k in j + 1..n {
                        ctx.check(i, j, k, &mut rep);
                    }
                }
                rep
            })
            .reduce(JacobiReport::default, JacobiReport::merge),
        JacobiMode::Sample { n: count, seed } => {
            let mut rep = JacobiReport::default();
            if n < 3 {
                return rep;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut ctx = Ctx::new(l);
            for _ in 0..count {
                let mut t = [0usize; 3];
                loop {
                    for x in t.iter_mut() {
                        *x = rng.gen_range(0..n);
                    }
                    t.sort_unstable();
                    if t[0] < t[1] && t[1] < t[2] {
                        break;
                    }
                }
                ctx.check(t[0], t[1], t[2], &mut rep);
            }
            rep
        }
    }
}

struct Ctx<'a> {
    l: &'a LieAlgebra,
    int: Option<&'a IntForm>,
    acc: Vec<i128>,
    touched: Vec<u32>,
}

impl<'a> Ctx<'a> {
    fn new(l: &'a LieAlgebra) -> Self {
        Ctx { l, int: l.int_form(), acc: vec![0; l.dim()], touched: Vec::new() }
    }

    fn check(&mut self, i: usize, j: usize, k: usize, rep: &mut JacobiReport) {
        rep.triples_checked += 1;
        let bad = match self.int {
            Some(f) => self.int_sum(f, i, j, k),
            None => self.rational_sum(i, j, k),
        };
        if bad {
            rep.violation_count += 1;
            if rep.violations.len() < MAX_LISTED {
                rep.violations.push([i, j, k]);
            }
        }
    }

    fn int_sum(&mut self, f: &IntForm, i: usize, j: usize, k: usize) -> bool {
        let n = self.l.dim();
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            for &(m, c) in &f.table[y * n + z] {
                for &(r, d) in &f.table[x * n + m as usize] {
                    if self.acc[r as usize] == 0 {
                        self.touched.push(r);
                    }
                    self.acc[r as usize] += c as i128 * d as i128;
                }
            }
        }
        let mut bad = false;
        for r in self.touched.drain(..) {
            bad |= self.acc[r as usize] != 0;
            self.acc[r as usize] = 0;
        }
        bad
    }

    fn rational_sum(&self, i: usize, j: usize, k: usize) -> bool {
        let n = self.l.dim();
        let mut acc = vec![Rational::zero(); n];
        for (x, y, z) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (m, c) in self.l.basis_bracket(y, z) {
                for (r, d) in self.l.basis_bracket(x, m) {
                    acc[r] += &c * &d;
                }
            }
        }
        acc.iter().any(|v| !v.is_zero())
    }
}
