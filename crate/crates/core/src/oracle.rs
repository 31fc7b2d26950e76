//! Reference implementations that share no code path with the series pipeline.
//!
//! * Jack polynomials from the gauged Sutherland operator
//!   `D = Σ_j (z_j ∂_j)² + λ Σ_{j<k} (z_j + z_k)/(z_j − z_k) (z_j ∂_j − z_k ∂_k)`,
//!   which is `Ψ_0⁻¹ (H − E_0) Ψ_0` in the variables `z_j = e^{i x_j}`. It maps
//!   `m_κ` to `(Σ κ_j² + λ Σ_j (N + 1 − 2j) κ_j) m_κ` plus terms on partitions
//!   strictly below `κ` in dominance order, so each degree block is solved by
//!   dense back substitution.
//! * Schur polynomials from the Jacobi–Trudi determinant `det(h_{n_i − i + j})`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{partitions_of, Partition};
use crate::rational::int;
use crate::sympoly::{Poly, SymPoly};
use crate::Rat;

/// The operator `D` restricted to symmetric polynomials.
pub fn sutherland_operator(lam: &Rat, p: &SymPoly) -> SymPoly {
    let n = p.nvars();
    let full = p.expand();
    let mut out = Poly::zero(n);
    for (e, c) in full.terms() {
        let diag: i64 = e.iter().map(|&x| (x as i64) * (x as i64)).sum();
        out.add_term(e.clone(), c * int(diag));
        for j in 0..n {
            for k in j + 1..n {
                if e[j] <= e[k] {
                    continue;
                }
                // this monomial together with its (j,k) swap
                let d = e[j] - e[k];
                let w = c * lam * int(d as i64);
                let mut base = e.clone();
                base[j] = e[k];
                base[k] = e[k];
                let mut push = |a: u32, b: u32, coef: Rat| {
                    let mut t = base.clone();
                    t[j] += a;
                    t[k] += b;
                    out.add_term(t, coef);
                };
                push(d, 0, w.clone());
                push(0, d, w.clone());
                for i in 1..d {
                    push(d - i, i, &w * int(2));
                }
            }
        }
    }
    out.to_sympoly().expect("the operator preserves symmetry")
}

/// Diagonal entry of `D` on `m_κ`.
pub fn sutherland_diagonal(lam: &Rat, kappa: &Partition) -> Rat {
    let n = kappa.len() as i64;
    let mut e = Rat::zero();
    for (j, &k) in kappa.parts().iter().enumerate() {
        let j = j as i64 + 1;
        e += int(k * k) + lam * int((n + 1 - 2 * j) * k);
    }
    e
}

/// Monic Jack polynomial `P_n = m_n + Σ_{κ < n} c_κ m_κ` with `D P_n = d_n P_n`.
pub fn jack_oracle(nvars: usize, lam: &Rat, n: &Partition) -> Result<SymPoly> {
    if n.len() != nvars {
        return Err(Error::Dimension(format!("partition {n} for N = {nvars}")));
    }
    // decreasing lex order refines dominance, so every κ above μ comes first
    let block: Vec<Partition> = partitions_of(n.size(), nvars)
        .into_iter()
        .filter(|k| k.dominated_by(n))
        .collect();
    let cols: BTreeMap<&Partition, SymPoly> = block
        .iter()
        .map(|k| (k, sutherland_operator(lam, &SymPoly::monomial(k.clone()))))
        .collect();
    let target = sutherland_diagonal(lam, n);
    let mut coef: BTreeMap<Partition, Rat> = BTreeMap::new();
    coef.insert(n.clone(), Rat::one());
    for mu in block.iter().skip(1) {
        let d = &target - sutherland_diagonal(lam, mu);
        if d.is_zero() {
            return Err(Error::BlockDegeneracy {
                partition: n.to_intvec(),
                other: mu.to_intvec(),
                value: target,
            });
        }
        let mut acc = Rat::zero();
        for (kappa, c) in &coef {
            acc += cols[kappa].coeff(mu) * c;
        }
        coef.insert(mu.clone(), acc / d);
    }
    SymPoly::from_terms(nvars, coef)
}

/// Complete homogeneous symmetric polynomial `h_r` in `nvars` variables.
pub fn complete_homogeneous(r: i64, nvars: usize) -> SymPoly {
    if r < 0 {
        return SymPoly::zero(nvars);
    }
    SymPoly::from_terms(nvars, partitions_of(r, nvars).into_iter().map(|k| (k, Rat::one())))
        .expect("partitions have the right length")
}

/// Schur polynomial `s_n = det(h_{n_i − i + j})` by Leibniz expansion.
pub fn schur_oracle(nvars: usize, n: &Partition) -> Result<SymPoly> {
    if n.len() != nvars {
        return Err(Error::Dimension(format!("partition {n} for N = {nvars}")));
    }
    let l = n.parts().iter().filter(|&&x| x > 0).count().max(1);
    let parts = &n.parts()[..l];
    let h: Vec<Vec<Poly>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| complete_homogeneous(parts[i] - i as i64 + j as i64, nvars).expand())
                .collect()
        })
        .collect();
    let mut det = Poly::zero(nvars);
    for (perm, sign) in permutations(l) {
        let mut term = Poly::one(nvars);
        for (i, &j) in perm.iter().enumerate() {
            if h[i][j].is_zero() {
                term = Poly::zero(nvars);
                break;
            }
            term = term.mul(&h[i][j]);
        }
        det.add_scaled(&term, &int(sign));
    }
    det.to_sympoly()
}

/// All permutations of `0..n` with their signs (Heap's algorithm).
fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    let mut out = vec![(a.clone(), sign)];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push((a.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn part(x: &[i64]) -> Partition {
        Partition::new(x.to_vec()).unwrap()
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|x| x.1).sum::<i64>(), 0);
    }

    #[test]
    fn schur_examples() {
        assert_eq!(schur_oracle(2, &part(&[1, 0])).unwrap(), SymPoly::monomial(part(&[1, 0])));
        let s = schur_oracle(2, &part(&[2, 0])).unwrap();
        assert_eq!(s.coeff(&part(&[2, 0])), int(1));
        assert_eq!(s.coeff(&part(&[1, 1])), int(1));
        assert_eq!(schur_oracle(2, &part(&[2, 1])).unwrap(), SymPoly::monomial(part(&[2, 1])));
        assert_eq!(schur_oracle(3, &part(&[1, 1, 0])).unwrap(), SymPoly::monomial(part(&[1, 1, 0])));
    }

    #[test]
    fn jack_examples() {
        for lam in [frac(1, 2), int(2), int(3)] {
            assert_eq!(
                jack_oracle(3, &lam, &part(&[1, 0, 0])).unwrap(),
                SymPoly::monomial(part(&[1, 0, 0]))
            );
            assert_eq!(
                jack_oracle(3, &lam, &part(&[1, 1, 1])).unwrap(),
                SymPoly::monomial(part(&[1, 1, 1]))
            );
        }
        let p = jack_oracle(2, &int(2), &part(&[2, 0])).unwrap();
        assert_eq!(p.coeff(&part(&[1, 1])), frac(4, 3));
    }

    #[test]
    fn jack_at_one_is_schur() {
        for n in 0..=5 {
            for k in partitions_of(n, 3) {
                assert_eq!(jack_oracle(3, &int(1), &k).unwrap(), schur_oracle(3, &k).unwrap());
            }
        }
    }

    #[test]
    fn jack_oracle_is_an_eigenfunction() {
        let lam = frac(1, 2);
        let n = part(&[3, 1, 1]);
        let p = jack_oracle(3, &lam, &n).unwrap();
        let mut r = sutherland_operator(&lam, &p);
        r.add_scaled(&p, &-sutherland_diagonal(&lam, &n));
        assert!(r.is_zero());
        for k in p.terms().keys() {
            assert!(k.dominated_by(&n));
        }
    }

    #[test]
    fn block_degeneracy_is_reported() {
        // at λ = −1 both m_(2) and m_(1,1) sit at diagonal value 2
        let lam = int(-1);
        let a = sutherland_diagonal(&lam, &part(&[2, 0]));
        let b = sutherland_diagonal(&lam, &part(&[1, 1]));
        assert_eq!(a, b);
        let e = jack_oracle(2, &lam, &part(&[2, 0])).unwrap_err();
        assert!(e.is_degeneracy());
    }
}
