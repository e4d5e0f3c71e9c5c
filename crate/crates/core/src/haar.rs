//! Independent ground truth for Haar moments of the unitary group.
//!
//! The Weingarten function is obtained by inverting the Gram matrix of
//! permutation operators in exact rational arithmetic, cross-checked against
//! the character-sum formula; moments of matrix entries then follow by
//! summing delta-matchings over permutation pairs. Nothing in this module
//! touches the Clebsch-Gordan machinery, so it can referee it.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_bigint::{BigInt, ToBigInt};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::repcore::partitions;
use crate::C64;

/// Irreducible character of the symmetric group S_t by the Murnaghan-Nakayama
/// recursion, evaluated via beta-numbers (first-column hook lengths).
pub fn sn_character(lambda: &[i64], class: &[i64]) -> i64 {
    let weight: i64 = lambda.iter().sum();
    let csum: i64 = class.iter().sum();
    assert_eq!(weight, csum, "character arguments must partition the same t");
    let betas: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| l + (lambda.len() - 1 - i) as i64)
        .collect();
    let mut class = class.to_vec();
    class.sort_unstable_by(|a, b| b.cmp(a));
    mn_rec(&betas, &class)
}

fn mn_rec(betas: &[i64], class: &[i64]) -> i64 {
    let Some((&r, rest)) = class.split_first() else {
        return 1;
    };
    let mut total = 0i64;
    for (pos, &b) in betas.iter().enumerate() {
        let target = b - r;
        if target < 0 || betas.contains(&target) {
            continue;
        }
        // Crossing an occupied beta-number flips the sign once per crossing.
        let crossings = betas.iter().filter(|&&c| target < c && c < b).count();
        let sign = if crossings % 2 == 0 { 1 } else { -1 };
        let mut next: Vec<i64> = betas.to_vec();
        next[pos] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        // Strip a zero tail that no longer encodes rows: normalising is not
        // required for correctness since beta-sets are shift-equivalent, and
        // we built all betas with the same offset, so just recurse.
        total += sign * mn_rec(&next, rest);
    }
    total
}

/// Schur polynomial at (1, ..., 1) with d ones: the U(d) dimension of
/// lambda, evaluated with the zero tail factored out so huge d stays cheap.
fn schur_at_ones(lambda: &[i64], d: i64) -> BigRational {
    BigRational::from_integer(
        crate::repcore::weyl_dimension_trimmed(lambda, d as u64)
            .to_bigint()
            .expect("nonnegative"),
    )
}

/// An exact Weingarten table for fixed (t, d): one rational value per
/// conjugacy class of S_t.
#[derive(Debug, Clone)]
pub struct WeingartenTable {
    pub t: usize,
    pub d: u32,
    /// Class (cycle type, decreasing) -> value.
    pub values: BTreeMap<Vec<usize>, BigRational>,
    /// True when d < t and the values come from the character-sum
    /// pseudo-inverse rather than a Gram inversion.
    pub pseudo_inverse: bool,
}

impl WeingartenTable {
    /// Builds the table: Gram inversion for d >= t, character-sum
    /// pseudo-inverse (restricted to diagrams with at most d rows) otherwise.
    /// For d >= t both routes are computed and must agree exactly.
    pub fn new(t: usize, d: u32) -> Result<Self> {
        if t == 0 {
            return Ok(Self {
                t,
                d,
                values: BTreeMap::new(),
                pseudo_inverse: false,
            });
        }
        if d == 0 {
            return Err(Error::OutOfRange("d must be positive".into()));
        }
        let character_sum = Self::character_sum(t, d);
        if (d as usize) < t {
            return Ok(Self {
                t,
                d,
                values: character_sum,
                pseudo_inverse: true,
            });
        }
        let gram = Self::gram_inverse(t, d)?;
        if gram != character_sum {
            return Err(Error::InconsistentInputs(format!(
                "Weingarten cross-check failed for t = {t}, d = {d}"
            )));
        }
        Ok(Self {
            t,
            d,
            values: gram,
            pseudo_inverse: false,
        })
    }

    /// Primary route: solve sum_tau Wg(sigma tau^-1) d^cycles(tau) = [sigma = e]
    /// as an exact linear system over one unknown per conjugacy class.
    fn gram_inverse(t: usize, d: u32) -> Result<BTreeMap<Vec<usize>, BigRational>> {
        let perms = Perm::all(t);
        let classes: Vec<Vec<usize>> = {
            let mut cs: Vec<Vec<usize>> = perms.iter().map(|p| p.cycle_type()).collect();
            cs.sort();
            cs.dedup();
            cs
        };
        let class_index: BTreeMap<Vec<usize>, usize> =
            classes.iter().cloned().zip(0..).collect();
        // One representative sigma per class; unknowns w_c.
        let reps: Vec<&Perm> = classes
            .iter()
            .map(|c| perms.iter().find(|p| &p.cycle_type() == c).unwrap())
            .collect();
        let k = classes.len();
        let mut a = vec![vec![BigRational::zero(); k]; k];
        let mut rhs = vec![BigRational::zero(); k];
        for (row, sigma) in reps.iter().enumerate() {
            for tau in &perms {
                let c = class_index[&sigma.compose(&tau.inverse()).cycle_type()];
                let pow = BigInt::from(d).pow(tau.num_cycles() as u32);
                a[row][c] += BigRational::from_integer(pow);
            }
            rhs[row] = if sigma.cycle_type().iter().all(|&l| l == 1) {
                BigRational::one()
            } else {
                BigRational::zero()
            };
        }
        let sol = solve_rational(a, rhs).ok_or(Error::SingularGram { d, t })?;
        Ok(classes.into_iter().zip(sol).collect())
    }

    /// Secondary route: Wg(sigma) = (1/t!^2) sum_{l(lambda) <= d}
    /// chi(e)^2 chi(sigma) / s_lambda(1^d).
    fn character_sum(t: usize, d: u32) -> BTreeMap<Vec<usize>, BigRational> {
        let classes: Vec<Vec<usize>> = {
            let mut cs: Vec<Vec<usize>> = Perm::all(t).iter().map(|p| p.cycle_type()).collect();
            cs.sort();
            cs.dedup();
            cs
        };
        let fact: BigInt = (1..=t as i64).map(BigInt::from).product();
        let norm = BigRational::new(BigInt::one(), &fact * &fact);
        let mut out = BTreeMap::new();
        for class in classes {
            let cycle: Vec<i64> = class.iter().map(|&c| c as i64).collect();
            let mut acc = BigRational::zero();
            for lambda in partitions(t, d as usize) {
                let chi_e = sn_character(&lambda, &vec![1; t]);
                let chi = sn_character(&lambda, &cycle);
                let dim = schur_at_ones(&lambda, d as i64);
                acc += BigRational::from_integer(BigInt::from(chi_e * chi_e * chi)) / dim;
            }
            out.insert(class, &acc * &norm);
        }
        out
    }

    pub fn value(&self, class: &[usize]) -> Option<&BigRational> {
        self.values.get(class)
    }
}

/// Exact Weingarten value for one conjugacy class (cycle type of S_t).
pub fn weingarten(class: &[usize], d: u32, t: usize) -> Result<BigRational> {
    let table = WeingartenTable::new(t, d)?;
    table
        .value(class)
        .cloned()
        .ok_or_else(|| Error::Shape(format!("{class:?} is not a cycle type of S_{t}")))
}

/// Dense Gaussian elimination over the rationals; returns None when singular.
fn solve_rational(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        b[col] *= &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
                let sub = &f * &b[col];
                b[r] -= sub;
            }
        }
    }
    Some(b)
}

/// A Haar-moment specification over matrix entries: `u` lists (row, col) of
/// plain factors U_{row,col}, `u_conj` of conjugated factors.
#[derive(Debug, Clone, Default)]
pub struct EntryMoment {
    pub u: Vec<(u32, u32)>,
    pub u_conj: Vec<(u32, u32)>,
}

/// Exact Haar average of a product of matrix entries of U and conj(U) over
/// U(d): sum over permutation pairs of delta-matchings times Weingarten
/// values. Unbalanced products integrate to zero.
pub fn haar_moment_unitary(spec: &EntryMoment, d: u32) -> Result<BigRational> {
    if spec.u.len() != spec.u_conj.len() {
        return Ok(BigRational::zero());
    }
    let t = spec.u.len();
    if t == 0 {
        return Ok(BigRational::one());
    }
    for &(r, c) in spec.u.iter().chain(spec.u_conj.iter()) {
        if r >= d || c >= d {
            return Err(Error::IndexOutOfRange(format!(
                "entry ({r},{c}) outside [0,{d})"
            )));
        }
    }
    let table = WeingartenTable::new(t, d)?;
    let perms = Perm::all(t);
    let mut acc = BigRational::zero();
    for sigma in &perms {
        // rows: i_k must equal i'_{sigma(k)}
        if !(0..t).all(|k| spec.u[k].0 == spec.u_conj[sigma.apply(k)].0) {
            continue;
        }
        for tau in &perms {
            if !(0..t).all(|k| spec.u[k].1 == spec.u_conj[tau.apply(k)].1) {
                continue;
            }
            let class = sigma.compose(&tau.inverse()).cycle_type();
            acc += table.value(&class).expect("all classes tabulated");
        }
    }
    Ok(acc)
}

/// f64 view of a rational. Huge numerators and denominators are rescaled by a
/// common power of two first so the quotient stays finite.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = 1i64 << 53;
            let scaled = r.numer() * BigInt::from(shift) / r.denom();
            scaled
                .to_f64()
                .map(|v| v / shift as f64)
                .unwrap_or(f64::NAN)
        }
    }
}

/// Converts a typed query script with index assignments into the plain
/// entry-product moment it must equal for U(d): forward contributes
/// U_{y,x}, conjugate conj(U)_{y,x}, transpose U_{x,y}, inverse
/// conj(U)_{x,y}; hatted factors enter conjugated.
pub fn entry_moment_for_script(
    types: &[crate::query::QueryType],
    xy: &[(u32, u32)],
    xy_hat: &[(u32, u32)],
) -> EntryMoment {
    use crate::query::QueryType::*;
    let mut spec = EntryMoment::default();
    for (k, &qt) in types.iter().enumerate() {
        let (x, y) = xy[k];
        match qt {
            Forward => spec.u.push((y, x)),
            Conjugate => spec.u_conj.push((y, x)),
            Transpose => spec.u.push((x, y)),
            Inverse => spec.u_conj.push((x, y)),
        }
        let (xh, yh) = xy_hat[k];
        match qt {
            Forward => spec.u_conj.push((yh, xh)),
            Conjugate => spec.u.push((yh, xh)),
            Transpose => spec.u_conj.push((xh, yh)),
            Inverse => spec.u.push((xh, yh)),
        }
    }
    spec
}

/// Haar-distributed unitary via complex Ginibre + QR with the R-diagonal
/// phase correction; deterministic for a fixed seed.
pub fn sample_haar(d: usize, seed: u64) -> DMatrix<C64> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    sample_haar_rng(d, &mut rng)
}

/// As [`sample_haar`] but drawing from a caller-supplied generator.
pub fn sample_haar_rng<R: Rng>(d: usize, rng: &mut R) -> DMatrix<C64> {
    let gauss = DMatrix::<C64>::from_fn(d, d, |_, _| {
        // Box-Muller; two uniforms per normal pair.
        let (u1, u2): (f64, f64) = (rng.gen::<f64>().max(1e-300), rng.gen());
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = 2.0 * std::f64::consts::PI * u2;
        C64::new(r * theta.cos(), r * theta.sin()) / 2f64.sqrt()
    });
    let qr = gauss.qr();
    let r = qr.r();
    let mut q = qr.q();
    for i in 0..d {
        let rii = r[(i, i)];
        let phase = if rii.norm() > 0.0 {
            rii / rii.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for k in 0..d {
            q[(k, i)] *= phase;
        }
    }
    q
}
