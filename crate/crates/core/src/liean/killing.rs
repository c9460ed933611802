use num_traits::Zero;

use crate::exactla::{float_inertia, inertia, rat, Inertia, MatrixQ, Rational};
use crate::titslie::LieAlgebra;

use super::LieanError;

/// B_ij = tr(ad e_i ad e_j), cached on the algebra.
pub fn killing(l: &LieAlgebra) -> MatrixQ {
    l.killing_cell().get_or_init(|| compute(l)).clone()
}

fn compute(l: &LieAlgebra) -> MatrixQ {
    let n = l.dim();
    let mut b = MatrixQ::zeros(n, n);
    if let Some(f) = l.int_form() {
        let s2 = (f.scale as i128) * (f.scale as i128);
        // dense[m*n + r] = coefficient of e_r in [e_j, e_m]
        let mut dense = vec![0i64; n * n];
        for j in 0..n {
            for m in 0..n {
                for &(r, c) in &f.table[j * n + m] {
                    dense[m * n + r as usize] = c;
                }
            }
            for i in 0..=j {
                // Σ_l Σ_m (ad_i)_{m l} (ad_j)_{l m}
                let mut acc: i128 = 0;
                for l_ in 0..n {
                    for &(m, c) in &f.table[i * n + l_] {
                        let d = dense[m as usize * n + l_];
                        if d != 0 {
                            acc += c as i128 * d as i128;
                        }
                    }
                }
                if acc != 0 {
                    let v = Rational::new(acc.into(), s2.into());
                    b.set(i, j, v.clone());
                    b.set(j, i, v);
                }
            }
            for m in 0..n {
                for &(r, _) in &f.table[j * n + m] {
                    dense[m * n + r as usize] = 0;
                }
            }
        }
        return b;
    }
    let ads: Vec<MatrixQ> = (0..n)
        .map(|i| {
            let mut e = vec![Rational::zero(); n];
            e[i] = rat(1, 1);
            l.ad(&e)
        })
        .collect();
    for i in 0..n {
        for j in 0..=i {
            let v = ads[i].mul(&ads[j]).trace();
            if !v.is_zero() {
                b.set(i, j, v.clone());
                b.set(j, i, v);
            }
        }
    }
    b
}

pub fn killing_inertia(l: &LieAlgebra) -> Inertia {
    inertia(&killing(l)).expect("Killing forms are symmetric")
}

/// χ = n₊ − n₋ of the Killing form.
pub fn character(l: &LieAlgebra) -> Result<i64, LieanError> {
    let i = killing_inertia(l);
    if i.zero > 0 {
        return Err(LieanError::DegenerateKilling);
    }
    Ok(i.signature())
}

/// Float eigen-sign count of the Killing form, for cross-checking only.
pub fn killing_float_inertia(l: &LieAlgebra) -> Inertia {
    float_inertia(&killing(l))
}
