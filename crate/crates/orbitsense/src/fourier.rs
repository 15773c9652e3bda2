//! Classical DFT on C^n and the Fourier transform on a finite group, with
//! inversion, Plancherel pairing, group convolution, and delta trains.
//!
//! The classical transform uses the positive-exponent convention
//! (F x)_l = sum_j x_j e^{2 pi i j l / n} over the residues j, l in 0..n,
//! with inverse (1/n) sum_l x_l e^{-2 pi i j l / n}. The unitary matrix used
//! for realization changes is F / sqrt(n).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{unit_phase, CMatrix, CVector, ZERO};
use crate::rep::Representation;

/// Normalized unitary DFT matrix, entry [l, j] = e^{2 pi i j l / n} / sqrt(n).
pub fn dft_matrix(n: usize) -> CMatrix {
    let scale = 1.0 / (n as f64).sqrt();
    CMatrix::from_fn(n, n, |l, j| {
        unit_phase((j * l) as f64 / n as f64) * scale
    })
}

/// Unnormalized forward transform (F x)_l = sum_j x_j e^{2 pi i j l / n}.
pub fn classical_dft(x: &CVector) -> CVector {
    let n = x.len();
    CVector::from_fn(n, |l, _| {
        (0..n)
            .map(|j| x[j] * unit_phase((j * l % n) as f64 / n as f64))
            .sum()
    })
}

/// Inverse transform (F^{-1} x)_j = (1/n) sum_l x_l e^{-2 pi i j l / n}.
pub fn classical_idft(x: &CVector) -> CVector {
    let n = x.len();
    CVector::from_fn(n, |j, _| {
        (0..n)
            .map(|l| x[l] * unit_phase(-((j * l % n) as f64) / n as f64))
            .sum::<Complex64>()
            / n as f64
    })
}

/// Fourier coefficients of a function on G over a complete irreducible
/// catalog: one d_pi x d_pi matrix per irreducible.
#[derive(Debug, Clone)]
pub struct FourierCoefficients {
    catalog: Vec<Representation>,
    coefficients: Vec<CMatrix>,
}

impl FourierCoefficients {
    pub fn catalog(&self) -> &[Representation] {
        &self.catalog
    }

    pub fn coefficient(&self, idx: usize) -> &CMatrix {
        &self.coefficients[idx]
    }

    pub fn coefficients(&self) -> &[CMatrix] {
        &self.coefficients
    }
}

fn check_catalog(group: &FiniteGroup, catalog: &[Representation]) -> Result<()> {
    let total: usize = catalog.iter().map(|r| r.degree() * r.degree()).sum();
    if total != group.order() {
        return Err(Error::InvalidArgument(format!(
            "incomplete catalog: sum d^2 = {total} != |G| = {}",
            group.order()
        )));
    }
    if catalog.iter().any(|r| r.group() != group) {
        return Err(Error::InvalidArgument("catalog belongs to a different group".into()));
    }
    Ok(())
}

/// Forward transform on the group: fhat(pi) = sum_g f(g) pi(g).
pub fn group_fourier(
    f: &CVector,
    group: &FiniteGroup,
    catalog: &[Representation],
) -> Result<FourierCoefficients> {
    check_catalog(group, catalog)?;
    if f.len() != group.order() {
        return Err(Error::DimensionMismatch {
            context: "group_fourier input".into(),
            expected: group.order(),
            got: f.len(),
        });
    }
    let coefficients = catalog
        .iter()
        .map(|rep| {
            let d = rep.degree();
            let mut acc = CMatrix::zeros(d, d);
            for g in group.elements() {
                acc += rep.matrix(g) * f[g];
            }
            acc
        })
        .collect();
    Ok(FourierCoefficients {
        catalog: catalog.to_vec(),
        coefficients,
    })
}

/// Inversion: f(g) = (1/|G|) sum_pi d_pi tr(fhat(pi) pi(g^{-1})).
pub fn group_inverse_fourier(coeffs: &FourierCoefficients) -> CVector {
    let group = coeffs.catalog[0].group().clone();
    let order = group.order();
    CVector::from_fn(order, |g, _| {
        let ginv = group.inv(g);
        let mut acc = ZERO;
        for (rep, fhat) in coeffs.catalog.iter().zip(&coeffs.coefficients) {
            acc += (fhat * rep.matrix(ginv)).trace() * rep.degree() as f64;
        }
        acc / order as f64
    })
}

/// Plancherel pairing (1/|G|) sum_pi d_pi tr(fhat(pi) hhat(pi)*); equals
/// the inner product sum_g f(g) conj(h(g)) for transforms over one catalog.
pub fn plancherel_pairing(a: &FourierCoefficients, b: &FourierCoefficients) -> Result<Complex64> {
    if a.catalog.len() != b.catalog.len()
        || a.coefficients.len() != b.coefficients.len()
        || a.catalog[0].group() != b.catalog[0].group()
    {
        return Err(Error::InvalidArgument(
            "plancherel pairing needs transforms over one catalog".into(),
        ));
    }
    let order = a.catalog[0].group().order() as f64;
    let mut acc = ZERO;
    for ((rep, fa), fb) in a.catalog.iter().zip(&a.coefficients).zip(&b.coefficients) {
        acc += (fa * fb.adjoint()).trace() * rep.degree() as f64;
    }
    Ok(acc / order)
}

/// Group convolution (x * y)(g) = sum_h x(h) y(g^{-1} h).
pub fn group_convolve(x: &CVector, y: &CVector, group: &FiniteGroup) -> Result<CVector> {
    let n = group.order();
    if x.len() != n || y.len() != n {
        return Err(Error::DimensionMismatch {
            context: "group_convolve".into(),
            expected: n,
            got: x.len().max(y.len()),
        });
    }
    Ok(CVector::from_fn(n, |g, _| {
        let ginv = group.inv(g);
        (0..n).map(|h| x[h] * y[group.mul(ginv, h)]).sum()
    }))
}

/// Equispaced spike vector: v_j = 1 iff j = 1 mod n/s. Its DFT is supported
/// on {l : l = 0 mod s} with values e^{2 pi i l / n} s.
pub fn delta_train(n: usize, s: usize) -> Result<CVector> {
    if s == 0 || n == 0 || !n.is_multiple_of(s) {
        return Err(Error::InvalidArgument(format!(
            "delta_train requires s | n, got n={n}, s={s}"
        )));
    }
    let gap = n / s;
    Ok(CVector::from_fn(n, |j, _| {
        if j % gap == 1 % gap {
            Complex64::new(1.0, 0.0)
        } else {
            ZERO
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs_diff, ONE};
    use crate::rep::irreducible_catalog;
    use crate::rng::rng_from_seed;
    use rand::Rng;

    fn random_vector<R: Rng>(n: usize, rng: &mut R) -> CVector {
        CVector::from_fn(n, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        })
    }

    #[test]
    fn delta_at_identity_transforms_to_identity_matrices() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let catalog = irreducible_catalog(&g).unwrap();
        let mut f = CVector::zeros(6);
        f[g.identity()] = ONE;
        let coeffs = group_fourier(&f, &g, &catalog).unwrap();
        for (rep, c) in catalog.iter().zip(coeffs.coefficients()) {
            let d = rep.degree();
            assert!(max_abs_diff(c, &CMatrix::identity(d, d)) < 1e-12);
        }
        // and inversion brings the delta back
        let back = group_inverse_fourier(&coeffs);
        assert!((back[g.identity()] - ONE).norm() < 1e-12);
        assert!((1..6).all(|g| back[g].norm() < 1e-12));
    }

    #[test]
    fn constant_function_on_z2() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let catalog = irreducible_catalog(&g).unwrap();
        let f = CVector::from_element(2, ONE);
        let coeffs = group_fourier(&f, &g, &catalog).unwrap();
        assert!((coeffs.coefficient(0)[(0, 0)] - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        assert!(coeffs.coefficient(1)[(0, 0)].norm() < 1e-14);
    }

    #[test]
    fn linearity() {
        let g = FiniteGroup::affine(3).unwrap();
        let catalog = irreducible_catalog(&g).unwrap();
        let mut rng = rng_from_seed(1);
        let f = random_vector(6, &mut rng);
        let h = random_vector(6, &mut rng);
        let a = Complex64::new(0.3, -1.2);
        let b = Complex64::new(-2.0, 0.7);
        let lhs = group_fourier(&(&f * a + &h * b), &g, &catalog).unwrap();
        let fa = group_fourier(&f, &g, &catalog).unwrap();
        let hb = group_fourier(&h, &g, &catalog).unwrap();
        for i in 0..catalog.len() {
            let expect = fa.coefficient(i) * a + hb.coefficient(i) * b;
            assert!(max_abs_diff(lhs.coefficient(i), &expect) < 1e-10);
        }
    }

    #[test]
    fn roundtrip_and_plancherel_on_catalog_groups() {
        let groups = vec![
            FiniteGroup::cyclic(5).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::affine(3).unwrap(),
        ];
        let mut rng = rng_from_seed(2);
        for g in groups {
            let catalog = irreducible_catalog(&g).unwrap();
            for _ in 0..100 {
                let f = random_vector(g.order(), &mut rng);
                let h = random_vector(g.order(), &mut rng);
                let fc = group_fourier(&f, &g, &catalog).unwrap();
                let hc = group_fourier(&h, &g, &catalog).unwrap();
                let back = group_inverse_fourier(&fc);
                assert!((&back - &f).iter().all(|z| z.norm() < 1e-10), "roundtrip {g}");
                let direct: Complex64 = (0..g.order()).map(|x| f[x] * h[x].conj()).sum();
                let paired = plancherel_pairing(&fc, &hc).unwrap();
                assert!((direct - paired).norm() < 1e-10, "plancherel {g}");
            }
        }
    }

    #[test]
    fn rejects_incomplete_catalog() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let mut catalog = irreducible_catalog(&g).unwrap();
        catalog.pop();
        let f = CVector::zeros(4);
        assert!(group_fourier(&f, &g, &catalog).is_err());
    }

    #[test]
    fn convolution_with_delta_and_bilinearity() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let mut rng = rng_from_seed(3);
        let x = random_vector(6, &mut rng);
        let mut delta = CVector::zeros(6);
        delta[g.identity()] = ONE;
        // (x * delta_e)(g) = sum_h x(h) delta(g^{-1} h) = x(g)
        let conv = group_convolve(&x, &delta, &g).unwrap();
        assert!((&conv - &x).iter().all(|z| z.norm() < 1e-12));
        let y = random_vector(6, &mut rng);
        let z = random_vector(6, &mut rng);
        let a = Complex64::new(1.5, -0.5);
        let lhs = group_convolve(&x, &(&y * a + &z), &g).unwrap();
        let rhs = group_convolve(&x, &y, &g).unwrap() * a + group_convolve(&x, &z, &g).unwrap();
        assert!((&lhs - &rhs).iter().all(|w| w.norm() < 1e-10));
    }

    #[test]
    fn convolution_theorem_on_cyclic_groups() {
        // classical DFT of a circular convolution is the pointwise product
        let _g = FiniteGroup::cyclic(8).unwrap();
        let mut rng = rng_from_seed(4);
        let x = random_vector(8, &mut rng);
        let y = random_vector(8, &mut rng);
        // cyclic convolution in the usual sense: c(g) = sum_h x(h) y(g - h)
        let c = CVector::from_fn(8, |k, _| {
            (0..8).map(|h| x[h] * y[(k + 8 - h) % 8]).sum()
        });
        let fc = classical_dft(&c);
        let fx = classical_dft(&x);
        let fy = classical_dft(&y);
        for l in 0..8 {
            assert!((fc[l] - fx[l] * fy[l]).norm() < 1e-9);
        }
    }

    #[test]
    fn classical_roundtrip() {
        let mut rng = rng_from_seed(5);
        for n in [1usize, 2, 7, 16] {
            let x = random_vector(n, &mut rng);
            let back = classical_idft(&classical_dft(&x));
            assert!((&back - &x).iter().all(|z| z.norm() < 1e-10));
        }
    }

    #[test]
    fn delta_train_cases() {
        // s = n: every entry 1, transform supported on one point
        let v = delta_train(4, 4).unwrap();
        assert_eq!(v.iter().filter(|z| z.norm() > 0.0).count(), 4);
        let fv = classical_dft(&v);
        let supp: Vec<usize> = (0..4).filter(|&l| fv[l].norm() > 1e-9).collect();
        assert_eq!(supp, vec![0]);

        // n=4, s=2: v = (1,0,1,0) on residues {1,3}
        let v = delta_train(4, 2).unwrap();
        let nz: Vec<usize> = (0..4).filter(|&j| v[j].norm() > 0.0).collect();
        assert_eq!(nz, vec![1, 3]);
        let fv = classical_dft(&v);
        let supp: Vec<usize> = (0..4).filter(|&l| fv[l].norm() > 1e-9).collect();
        assert_eq!(supp, vec![0, 2]);

        // n=6, s=3: nonzero transform values have modulus 3
        let v = delta_train(6, 3).unwrap();
        let fv = classical_dft(&v);
        for l in 0..6 {
            if l % 3 == 0 {
                assert!((fv[l].norm() - 3.0).abs() < 1e-12);
                assert!((fv[l] - unit_phase(l as f64 / 6.0) * 3.0).norm() < 1e-12);
            } else {
                assert!(fv[l].norm() < 1e-12);
            }
        }

        assert!(delta_train(6, 4).is_err());
    }
}
