use serde::Serialize;

use super::{OracleError, PolyMatrix};
use crate::algebra::IntPolynomial;

fn mu_pow(alpha: i64, e: usize) -> IntPolynomial {
    IntPolynomial::linear_pow(alpha, e)
}

/// `F_e = Σ_i s_i u_i μ_i^e` over distinct bases `μ_i = λ + α_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportFamily {
    pub bases: Vec<i64>,
    pub signs: Vec<i8>,
    pub coefficients: Vec<IntPolynomial>,
    pub exponents: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenVandermondeReport {
    /// `F_{e_{m-1}} = (Π μ_i^{e_0}) G_D h` with an integer-polynomial `h`.
    pub factorization: bool,
    /// `μ_r ∤ G_D` for every base.
    pub coprime: bool,
    /// Two-node case: a nonzero coefficient pair cannot kill both functionals.
    pub two_node: Option<bool>,
    /// Three-node case: `ord_{μ_1} F_{e_2} = e_0 + ord_{μ_1} h`.
    pub order: Option<bool>,
}

impl GenVandermondeReport {
    pub fn holds(&self) -> bool {
        self.factorization && self.coprime && self.two_node != Some(false) && self.order != Some(false)
    }
}

/// `G_D = det(μ_i^{d_j})` with `d_j = e_j - e_0`; rows are exponents.
fn gap_vandermonde(bases: &[i64], gaps: &[usize]) -> PolyMatrix {
    PolyMatrix::from_fn(bases.len(), |j, i| mu_pow(bases[i], gaps[j]))
}

impl SupportFamily {
    pub fn m(&self) -> usize {
        self.bases.len()
    }

    pub fn a(&self, i: usize) -> IntPolynomial {
        if self.signs[i] < 0 {
            -&self.coefficients[i]
        } else {
            self.coefficients[i].clone()
        }
    }

    /// `F_e`.
    pub fn functional(&self, e: usize) -> IntPolynomial {
        (0..self.m()).map(|i| &self.a(i) * &mu_pow(self.bases[i], e)).sum()
    }

    fn gaps(&self) -> Vec<usize> {
        self.exponents.iter().map(|e| e - self.exponents[0]).collect()
    }

    /// The family whose coefficients are `A_i = h C_i Π_{k≠i} μ_k^{e_0}`,
    /// with `C_i` the last-row cofactors of the gap Vandermonde. All but the
    /// last functional vanish.
    pub fn from_kernel(bases: Vec<i64>, exponents: Vec<usize>, h: IntPolynomial) -> Result<Self, OracleError> {
        let fam = Self {
            signs: vec![1; bases.len()],
            coefficients: vec![IntPolynomial::zero(); bases.len()],
            bases,
            exponents,
        };
        fam.validate()?;
        let m = fam.m();
        let w = gap_vandermonde(&fam.bases, &fam.gaps());
        let e0 = fam.exponents[0];
        let coefficients = (0..m)
            .map(|i| {
                let minor = w.minor(m - 1, i).det();
                let c = if (m + i).is_multiple_of(2) { minor } else { -&minor };
                let others: IntPolynomial = (0..m).filter(|&k| k != i).map(|k| mu_pow(fam.bases[k], e0)).product();
                &(&h * &c) * &others
            })
            .collect();
        Ok(Self { coefficients, ..fam })
    }

    fn validate(&self) -> Result<(), OracleError> {
        let m = self.m();
        if m == 0 || self.signs.len() != m || self.coefficients.len() != m || self.exponents.len() != m {
            return Err(OracleError::BadFamily("length mismatch".into()));
        }
        let mut b = self.bases.clone();
        b.sort_unstable();
        if b.windows(2).any(|w| w[0] == w[1]) {
            return Err(OracleError::BadFamily("bases are not distinct".into()));
        }
        if self.exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(OracleError::BadFamily("exponents are not increasing".into()));
        }
        if self.signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(OracleError::BadFamily("signs must be ±1".into()));
        }
        Ok(())
    }
}

pub fn check_gen_vandermonde(fam: &SupportFamily) -> Result<GenVandermondeReport, OracleError> {
    fam.validate()?;
    let m = fam.m();
    if (0..m - 1).any(|j| !fam.functional(fam.exponents[j]).is_zero()) {
        return Err(OracleError::BadFamily("leading functionals do not vanish".into()));
    }
    let e0 = fam.exponents[0];
    let gd = gap_vandermonde(&fam.bases, &fam.gaps()).det();
    let prefix: IntPolynomial = fam.bases.iter().map(|&a| mu_pow(a, e0)).product();
    let last = fam.functional(fam.exponents[m - 1]);
    let h = if gd.is_zero() { None } else { last.exact_div(&(&prefix * &gd)) };
    let coprime =
        !gd.is_zero() && fam.bases.iter().all(|&a| gd.divides_by(&IntPolynomial::linear(a)).ok().flatten().is_none());
    let two_node = (m == 2).then(|| (0..2).all(|i| fam.a(i).is_zero()) || !last.is_zero());
    let order = match (&h, m) {
        (Some(h), 3) if !h.is_zero() => {
            let a = fam.bases[0];
            Some(last.order_at(a) == h.order_at(a).map(|k| k + e0))
        }
        (_, 3) => Some(last.is_zero()),
        _ => None,
    };
    Ok(GenVandermondeReport { factorization: h.is_some(), coprime, two_node, order })
}

/// The four operator shapes, each parametrised so that the stored arguments
/// form a member of the shape's vanishing locus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BadLocusShape {
    /// `u + μ_α^c v` with `u = μ_α^c w`, `v = -w`.
    Sb2 { alpha: i64, c: usize, w: IntPolynomial },
    /// `μ_α^c u_1 + μ_β^c u_2` with `u_1 = -μ_β^c h`, `u_2 = μ_α^c h`.
    Db2 { alpha: i64, beta: i64, c: usize, h: IntPolynomial },
    /// `μ^{c0} u_0 + μ^{c1} u_1 + μ^{c2} u_2` with `u_0` solved from `u_1, u_2`.
    Sb3 { alpha: i64, c: [usize; 3], u1: IntPolynomial, u2: IntPolynomial },
    /// `Σ μ_{α_k}^c u_k`, built from free `k2, k3, h`.
    Db3 { alphas: [i64; 3], c: usize, k2: IntPolynomial, k3: IntPolynomial, h: IntPolynomial },
}

impl BadLocusShape {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Sb2 { .. } => "SB2",
            Self::Db2 { .. } => "DB2",
            Self::Sb3 { .. } => "SB3",
            Self::Db3 { .. } => "DB3",
        }
    }

    /// Operator arguments of the constructed locus member.
    pub fn member(&self) -> Vec<IntPolynomial> {
        match self {
            Self::Sb2 { alpha, c, w } => vec![&mu_pow(*alpha, *c) * w, -w],
            Self::Db2 { alpha, beta, c, h } => vec![-&(&mu_pow(*beta, *c) * h), &mu_pow(*alpha, *c) * h],
            Self::Sb3 { alpha, c, u1, u2 } => {
                let inner = u1 + &(&mu_pow(*alpha, c[2] - c[1]) * u2);
                vec![-&(&mu_pow(*alpha, c[1] - c[0]) * &inner), u1.clone(), u2.clone()]
            }
            Self::Db3 { alphas: [a1, a2, a3], c, k2, k3, h } => {
                let (m1, m2, m3) = (mu_pow(*a1, *c), mu_pow(*a2, *c), mu_pow(*a3, *c));
                let u2 = &(&m1 * k2) + &(&m3 * h);
                let u3 = &(&m1 * k3) - &(&m2 * h);
                let u1 = -&(&(&m2 * k2) + &(&m3 * k3));
                vec![u1, u2, u3]
            }
        }
    }

    pub fn evaluate(&self, u: &[IntPolynomial]) -> IntPolynomial {
        match self {
            Self::Sb2 { alpha, c, .. } => &u[0] + &(&mu_pow(*alpha, *c) * &u[1]),
            Self::Db2 { alpha, beta, c, .. } => &(&mu_pow(*alpha, *c) * &u[0]) + &(&mu_pow(*beta, *c) * &u[1]),
            Self::Sb3 { alpha, c, .. } => (0..3).map(|k| &mu_pow(*alpha, c[k]) * &u[k]).sum(),
            Self::Db3 { alphas, c, .. } => (0..3).map(|k| &mu_pow(alphas[k], *c) * &u[k]).sum(),
        }
    }

    /// The divisibility characterisation of `evaluate(u) = 0`.
    pub fn characterised(&self, u: &[IntPolynomial]) -> bool {
        match self {
            Self::Sb2 { alpha, c, .. } => u[0].exact_div(&mu_pow(*alpha, *c)).is_some_and(|q| u[1] == -&q),
            Self::Db2 { alpha, beta, c, .. } => {
                u[0].exact_div(&mu_pow(*beta, *c)).is_some_and(|q| u[1] == -&(&mu_pow(*alpha, *c) * &q))
            }
            Self::Sb3 { alpha, c, .. } => u[0]
                .exact_div(&mu_pow(*alpha, c[1] - c[0]))
                .is_some_and(|w0| &u[1] + &(&mu_pow(*alpha, c[2] - c[1]) * &u[2]) == -&w0),
            Self::Db3 { alphas, c, .. } => {
                let s = &(&mu_pow(alphas[1], *c) * &u[1]) + &(&mu_pow(alphas[2], *c) * &u[2]);
                s.exact_div(&mu_pow(alphas[0], *c)).is_some_and(|q| u[0] == -&q)
            }
        }
    }

    fn well_formed(&self) -> bool {
        match self {
            Self::Sb2 { c, .. } => *c >= 1,
            Self::Db2 { alpha, beta, c, .. } => *c >= 1 && alpha != beta,
            Self::Sb3 { c, .. } => c[0] < c[1] && c[1] < c[2],
            Self::Db3 { alphas: [a, b, d], c, .. } => *c >= 1 && a != b && b != d && a != d,
        }
    }
}

/// Both directions of the characterisation: the constructed member vanishes
/// and satisfies it; shifting the constant term of its first argument by one
/// leaves the locus and fails it.
pub fn check_bad_locus(shape: &BadLocusShape) -> bool {
    if !shape.well_formed() {
        return false;
    }
    let member = shape.member();
    let mut moved = member.clone();
    moved[0] = &moved[0] + &IntPolynomial::one();
    let inside = shape.evaluate(&member).is_zero() && shape.characterised(&member);
    let outside = !shape.evaluate(&moved).is_zero() && !shape.characterised(&moved);
    inside && outside
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_node_example() {
        let fam = SupportFamily::from_kernel(vec![0, 1], vec![0, 1], IntPolynomial::one()).unwrap();
        assert_eq!(fam.a(0), IntPolynomial::one());
        assert_eq!(fam.a(1), IntPolynomial::constant(-1));
        assert!(fam.functional(0).is_zero());
        assert_eq!(fam.functional(1), IntPolynomial::constant(-1));
        let r = check_gen_vandermonde(&fam).unwrap();
        assert!(r.holds());
        assert_eq!(r.two_node, Some(true));
    }

    #[test]
    fn three_node_factorises() {
        let h = IntPolynomial::from_i64s(&[2, 0, 1]);
        let fam = SupportFamily::from_kernel(vec![0, 3, 5], vec![1, 2, 4], h).unwrap();
        let r = check_gen_vandermonde(&fam).unwrap();
        assert!(r.factorization && r.coprime);
        assert_eq!(r.order, Some(true));
        let hm = IntPolynomial::linear_pow(0, 2);
        let fam = SupportFamily::from_kernel(vec![0, 3, 5], vec![1, 2, 4], hm).unwrap();
        assert_eq!(fam.functional(4).order_at(0), Some(3));
        assert!(check_gen_vandermonde(&fam).unwrap().holds());
    }

    #[test]
    fn symmetric_bases_break_coprimality() {
        // At λ = 0 the other bases shift to ∓1, and an even gap makes them collide.
        let fam = SupportFamily::from_kernel(vec![1, 0, 2], vec![0, 1, 3], IntPolynomial::one()).unwrap();
        assert_eq!(fam.functional(3), IntPolynomial::from_i64s(&[6, 6]));
        let r = check_gen_vandermonde(&fam).unwrap();
        assert!(r.factorization);
        assert!(!r.coprime);
        assert_eq!(r.order, Some(false));
    }

    #[test]
    fn rejects_bad_families() {
        let mut fam = SupportFamily::from_kernel(vec![0, 1], vec![0, 2], IntPolynomial::one()).unwrap();
        fam.coefficients[0] = &fam.coefficients[0] + &IntPolynomial::one();
        assert!(matches!(check_gen_vandermonde(&fam), Err(OracleError::BadFamily(_))));
        assert!(SupportFamily::from_kernel(vec![1, 1], vec![0, 1], IntPolynomial::one()).is_err());
        assert!(SupportFamily::from_kernel(vec![0, 1], vec![1, 1], IntPolynomial::one()).is_err());
    }

    #[test]
    fn bad_locus_shapes() {
        let w = IntPolynomial::from_i64s(&[1, 2]);
        assert!(check_bad_locus(&BadLocusShape::Sb2 { alpha: 2, c: 2, w: w.clone() }));
        let sb2 = BadLocusShape::Sb2 { alpha: 0, c: 1, w: IntPolynomial::zero() };
        assert!(!sb2.evaluate(&[IntPolynomial::one(), IntPolynomial::zero()]).is_zero());
        assert!(check_bad_locus(&BadLocusShape::Db2 { alpha: 0, beta: 1, c: 2, h: IntPolynomial::linear(5) }));
        assert!(check_bad_locus(&BadLocusShape::Sb3 {
            alpha: 1,
            c: [0, 2, 3],
            u1: w.clone(),
            u2: IntPolynomial::linear(4)
        }));
        assert!(check_bad_locus(&BadLocusShape::Db3 {
            alphas: [0, 1, 3],
            c: 2,
            k2: w.clone(),
            k3: IntPolynomial::constant(-3),
            h: IntPolynomial::linear(1),
        }));
        assert!(!check_bad_locus(&BadLocusShape::Db2 { alpha: 1, beta: 1, c: 1, h: w }));
    }
}
