//! Randomized exact checks of the generalized Schur complement identities the
//! persistent Laplacian relies on.

use rand::Rng;
use serde::Serialize;

use super::exact::is_psd;
use super::{
    schur_complement, weighted_complement_basis, ExactMatrix, FloatMatrix, Rational, Scalar,
};
use crate::complex::generate::rng_from_seed;
use crate::linalg::ratio;
use crate::oracle::restricted_product;

/// Default number of random instances per seed.
pub const DEFAULT_TRIALS: usize = 20;
/// Largest matrix dimension drawn.
pub const MAX_SIZE: usize = 6;

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
}

impl PropertyCheck {
    fn new(name: &'static str) -> Self {
        PropertyCheck {
            name,
            ..Default::default()
        }
    }

    fn record(&mut self, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurPropertyReport {
    pub seed: u64,
    pub trials: usize,
    /// `Eᵀ R (R⁻¹ E Eᵀ R)† R⁻¹ E = Eᵀ (E Eᵀ)† E = E† E`.
    pub cancellation: PropertyCheck,
    /// `ker Sch(L, W) = proj_W(ker L)`.
    pub kernel_projection: PropertyCheck,
    /// `Sch(f f*, W) = f_W f_W*` computed on `f⁻¹(W)`.
    pub restriction_product: PropertyCheck,
    /// Every PSD `M` with `L ⪰ ext(M)` satisfies `Sch(L, W) ⪰ M`, and the
    /// maximum itself is admissible.
    pub extremal: PropertyCheck,
    /// Block-diagonal changes of basis conjugate the Schur complement.
    pub basis_independence: PropertyCheck,
}

impl SchurPropertyReport {
    pub fn checks(&self) -> [&PropertyCheck; 5] {
        [
            &self.cancellation,
            &self.kernel_projection,
            &self.restriction_product,
            &self.extremal,
            &self.basis_independence,
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|c| c.passed())
    }
}

fn random_entry(rng: &mut impl Rng) -> Rational {
    if rng.gen_bool(0.2) {
        ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3))
    } else {
        Rational::from_i64(rng.gen_range(-2..=2))
    }
}

fn random_matrix(rows: usize, cols: usize, rng: &mut impl Rng) -> ExactMatrix {
    ExactMatrix::from_fn(rows, cols, |_, _| random_entry(rng))
}

/// Random matrix that is rank deficient about half the time.
fn random_factor(rows: usize, cols: usize, rng: &mut impl Rng) -> ExactMatrix {
    if rows > 1 && cols > 1 && rng.gen_bool(0.5) {
        let inner = rng.gen_range(1..rows.min(cols));
        &random_matrix(rows, inner, rng) * &random_matrix(inner, cols, rng)
    } else {
        random_matrix(rows, cols, rng)
    }
}

/// Unit lower times unit upper triangular, hence invertible.
fn random_invertible(n: usize, rng: &mut impl Rng) -> ExactMatrix {
    let lower = ExactMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => random_entry(rng),
        std::cmp::Ordering::Equal => Rational::one(),
        std::cmp::Ordering::Less => Rational::zero(),
    });
    let upper = ExactMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => random_entry(rng),
        std::cmp::Ordering::Equal => Rational::from_i64(if rng.gen_bool(0.5) { 1 } else { -2 }),
        std::cmp::Ordering::Greater => Rational::zero(),
    });
    &lower * &upper
}

fn random_signed_permutation(n: usize, rng: &mut impl Rng) -> ExactMatrix {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut p = ExactMatrix::zeros(n, n);
    for (i, &j) in perm.iter().enumerate() {
        p[(i, j)] = Rational::from_i64(if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    p
}

fn block_diag(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let n = a.rows() + b.rows();
    ExactMatrix::from_fn(n, n, |i, j| {
        if i < a.rows() && j < a.cols() {
            a[(i, j)].clone()
        } else if i >= a.rows() && j >= a.cols() {
            b[(i - a.rows(), j - a.cols())].clone()
        } else {
            Rational::zero()
        }
    })
}

fn same_span(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    let r = a.rank();
    r == b.rank() && a.hstack(b).rank() == r
}

/// Product of random Givens rotations acting on `n` coordinates.
fn random_orthogonal(n: usize, rng: &mut impl Rng) -> FloatMatrix {
    let mut q = FloatMatrix::identity(n);
    for _ in 0..2 * n {
        if n < 2 {
            break;
        }
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let (c, s) = (theta.cos(), theta.sin());
        let mut g = FloatMatrix::identity(n);
        g[(i, i)] = c;
        g[(j, j)] = c;
        g[(i, j)] = -s;
        g[(j, i)] = s;
        q = &q * &g;
    }
    q
}

fn float_block_diag(a: &FloatMatrix, b: &FloatMatrix) -> FloatMatrix {
    let n = a.rows() + b.rows();
    FloatMatrix::from_fn(n, n, |i, j| {
        if i < a.rows() && j < a.cols() {
            a[(i, j)]
        } else if i >= a.rows() && j >= a.cols() {
            b[(i - a.rows(), j - a.cols())]
        } else {
            0.0
        }
    })
}

pub fn verify_schur_properties(seed: u64) -> SchurPropertyReport {
    verify_schur_properties_with(seed, DEFAULT_TRIALS, MAX_SIZE)
}

pub fn verify_schur_properties_with(
    seed: u64,
    trials: usize,
    max_size: usize,
) -> SchurPropertyReport {
    let mut rng = rng_from_seed(seed);
    let mut report = SchurPropertyReport {
        seed,
        trials,
        cancellation: PropertyCheck::new("cancellation"),
        kernel_projection: PropertyCheck::new("kernel_projection"),
        restriction_product: PropertyCheck::new("restriction_product"),
        extremal: PropertyCheck::new("extremal"),
        basis_independence: PropertyCheck::new("basis_independence"),
    };
    for _ in 0..trials {
        let n = rng.gen_range(1..=max_size.max(1));
        let m = rng.gen_range(1..=max_size.max(1));
        let d = rng.gen_range(0..=n);

        let e = random_factor(n, m, &mut rng);
        let r = random_invertible(n, &mut rng);
        let r_inv = r.inverse().expect("triangular factors are invertible");
        let et = e.transpose();
        let lhs = &(&(&et * &r) * &(&(&(&r_inv * &e) * &et) * &r).pseudoinverse()) * &(&r_inv * &e);
        let middle = &(&et * &(&e * &et).pseudoinverse()) * &e;
        let rhs = &e.pseudoinverse() * &e;
        report.cancellation.record(lhs == rhs && middle == rhs);

        // L = E Eᵀ is PSD; W is spanned by the first d coordinates.
        let l = &e * &et;
        let sch = schur_complement(&l, n - d).expect("square");
        let kernel = l.kernel_basis();
        let projected = kernel.block(0..d, 0..kernel.cols());
        report
            .kernel_projection
            .record(same_span(&sch.kernel_basis(), &projected));

        let eye = |k| ExactMatrix::identity(k);
        let axis = eye(n).block(0..n, 0..d);
        let direct = restricted_product(&e, &eye(m), &eye(n), &axis).expect("consistent shapes");
        let mut ok = direct == sch;
        // Same identity for a random subspace, through a complement basis.
        let w = random_invertible(n, &mut rng).block(0..n, 0..d);
        let complement =
            weighted_complement_basis(&w, &vec![Rational::one(); n]).expect("independent columns");
        let basis = w.hstack(&complement);
        let in_basis = &(&basis.inverse().expect("basis") * &l) * &basis;
        let sch_w = schur_complement(&in_basis, n - d).expect("square");
        ok &= restricted_product(&e, &eye(m), &eye(n), &w).expect("consistent shapes") == sch_w;
        report.restriction_product.record(ok);

        let extend = |mat: &ExactMatrix| mat.pad(n, n);
        let mut extremal_ok = is_psd(&l.sub(&extend(&sch)));
        for _ in 0..4 {
            let x = random_matrix(d, 1, &mut rng);
            let alpha = ratio(rng.gen_range(0..=4), 2);
            let beta = ratio(rng.gen_range(0..=2), rng.gen_range(1..=4));
            let candidate = sch.scale(&alpha).add(&(&x * &x.transpose()).scale(&beta));
            if is_psd(&l.sub(&extend(&candidate))) {
                extremal_ok &= is_psd(&sch.sub(&candidate));
            }
        }
        report.extremal.record(extremal_ok);

        let p = random_invertible(d, &mut rng);
        let q = random_invertible(n - d, &mut rng);
        let conj = block_diag(&p, &q);
        let conjugated = &(&conj.inverse().expect("invertible") * &l) * &conj;
        let p_inv = p.inverse().expect("invertible");
        let mut independent =
            schur_complement(&conjugated, n - d).expect("square") == &(&p_inv * &sch) * &p;
        let sp = random_signed_permutation(d, &mut rng);
        let sq = random_signed_permutation(n - d, &mut rng);
        let signed = block_diag(&sp, &sq);
        let conjugated = &(&signed.transpose() * &l) * &signed;
        independent &= schur_complement(&conjugated, n - d).expect("square")
            == &(&sp.transpose() * &sch) * &sp;
        let qa = random_orthogonal(d, &mut rng);
        let qb = random_orthogonal(n - d, &mut rng);
        let rot = float_block_diag(&qa, &qb);
        let lf = l.to_float();
        let rotated = schur_complement(&(&(&rot.transpose() * &lf) * &rot), n - d).expect("square");
        let expected = &(&qa.transpose() * &sch.to_float()) * &qa;
        let scale = 1.0 + lf.max_abs();
        independent &= rotated.sub(&expected).max_abs() <= 1e-9 * scale;
        report.basis_independence.record(independent);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_trivially() {
        let i = ExactMatrix::identity(3);
        let lhs = &(&i * &(&i * &i).pseudoinverse()) * &i;
        assert_eq!(lhs, i);
        // L = f f* with f = I and W the first axis gives the 1x1 identity.
        assert_eq!(
            schur_complement(&ExactMatrix::identity(2), 1).unwrap(),
            ExactMatrix::identity(1)
        );
    }

    #[test]
    fn seed_seven_passes() {
        let report = verify_schur_properties(7);
        for check in report.checks() {
            assert!(check.passed(), "{check:?}");
            assert_eq!(check.checked, DEFAULT_TRIALS);
        }
    }
}
