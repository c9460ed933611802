//! Property suites for the composition and Jordan algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cda::{AlgLabel, CompAlgebra};
use crate::exactla::{rint, Rational};
use crate::jordan::{make_jordan, JordanAlgebra};

pub const JORDAN_PAIRS: usize = 200;
pub const NORM_SAMPLES: usize = 20;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropOutcome {
    pub suite: String,
    pub algebra: String,
    pub checked: usize,
    pub failures: usize,
}

impl PropOutcome {
    pub fn ok(&self) -> bool {
        self.failures == 0 && self.checked > 0
    }
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| rint(rng.gen_range(-3i64..=3))).collect()
}

fn jname(j: &JordanAlgebra) -> String {
    format!("J({}, {:+})", j.base_label().as_str(), j.epsilon())
}

/// n(xy) = n(x) n(y) on every pair of basis units.
pub fn composition_law(a: &CompAlgebra) -> PropOutcome {
    let d = a.dim();
    let n = |x: &[Rational]| a.inner_coeffs(x, x);
    let mut failures = 0;
    for i in 0..d {
        for j in 0..d {
            let (x, y) = (a.unit(i), a.unit(j));
            if n(&a.mul_coeffs(&x, &y)) != n(&x) * n(&y) {
                failures += 1;
            }
        }
    }
    PropOutcome { suite: "composition law".into(), algebra: a.label().as_str().into(), checked: d * d, failures }
}

/// (x∘y)∘x² = x∘(y∘x²) on random pairs.
pub fn jordan_identity(j: &JordanAlgebra, pairs: usize, seed: u64) -> PropOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..pairs {
        let x = random_vec(&mut rng, j.dim());
        let y = random_vec(&mut rng, j.dim());
        let x2 = j.mul_coeffs(&x, &x);
        let lhs = j.mul_coeffs(&j.mul_coeffs(&x, &y), &x2);
        let rhs = j.mul_coeffs(&x, &j.mul_coeffs(&y, &x2));
        failures += (lhs != rhs) as usize;
    }
    PropOutcome { suite: "Jordan identity".into(), algebra: jname(j), checked: pairs, failures }
}

/// Tr((x∘y)∘z) = Tr(x∘(y∘z)) on every basis triple.
pub fn trace_associativity(j: &JordanAlgebra) -> PropOutcome {
    let d = j.dim();
    let units: Vec<Vec<Rational>> = (0..d).map(|i| j.unit(i)).collect();
    let prods: Vec<Vec<Vec<Rational>>> = (0..d).map(|x| (0..d).map(|y| j.mul_coeffs(&units[x], &units[y])).collect()).collect();
    let mut failures = 0;
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let l = j.trace_coeffs(&j.mul_coeffs(&prods[x][y], &units[z]));
                let r = j.trace_coeffs(&j.mul_coeffs(&units[x], &prods[y][z]));
                failures += (l != r) as usize;
            }
        }
    }
    PropOutcome { suite: "trace associativity".into(), algebra: jname(j), checked: d * d * d, failures }
}

/// 3·d(Dj, j, j) = 0 for every derivation D and random j, i.e. the cubic
/// norm is invariant to first order.
pub fn norm_invariance(j: &JordanAlgebra, samples: usize, seed: u64) -> PropOutcome {
    let dt = j.d_tensor();
    let ders = j.jder_basis();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for d in &ders {
        for _ in 0..samples {
            let x = random_vec(&mut rng, j.dim());
            let dx = d.mul_vec(&x);
            let v = rint(3) * dt.eval(&dx, &x, &x);
            failures += !num_traits::Zero::is_zero(&v) as usize;
        }
    }
    PropOutcome { suite: "norm invariance".into(), algebra: jname(j), checked: ders.len() * samples, failures }
}

/// All four suites over the seven composition algebras and the fourteen
/// rank-3 Jordan algebras.
pub fn run_all(seed: u64) -> Vec<PropOutcome> {
    let mut out: Vec<PropOutcome> = AlgLabel::ALL.iter().map(|&a| composition_law(&CompAlgebra::from_label(a))).collect();
    let jobs: Vec<(AlgLabel, i8)> = AlgLabel::ALL.iter().flat_map(|&a| [(a, 1), (a, -1)]).collect();
    let per: Vec<Vec<PropOutcome>> = jobs
        .par_iter()
        .map(|&(a, eps)| {
            let j = make_jordan(&CompAlgebra::from_label(a), eps).expect("ε = ±1");
            vec![jordan_identity(&j, JORDAN_PAIRS, seed), trace_associativity(&j), norm_invariance(&j, NORM_SAMPLES, seed)]
        })
        .collect();
    out.extend(per.into_iter().flatten());
    out
}
