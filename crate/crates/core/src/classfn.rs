//! Exact rational class functions on subgroups and their induction.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::group::{ElemIdx, FiniteGroup, Subgroup};
use crate::perm::Permutation;

/// Exact rational with arbitrary-precision numerator and denominator.
pub type Rational = num_rational::BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_from_usize(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` with an explicit denominator, e.g. `3/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// A rational-valued function on `domain`, stored as one value per
/// `domain`-conjugacy class. Outside the domain it evaluates to zero.
#[derive(Clone, Debug)]
pub struct ClassFunction {
    domain: Arc<Subgroup>,
    values: Vec<Rational>,
}

impl ClassFunction {
    pub fn from_values(domain: Arc<Subgroup>, values: Vec<Rational>) -> Result<Self, Error> {
        if values.len() != domain.class_count() {
            return Err(Error::InvalidArgument(format!(
                "{} values for {} classes",
                values.len(),
                domain.class_count()
            )));
        }
        Ok(ClassFunction { domain, values })
    }

    pub fn constant(domain: Arc<Subgroup>, value: Rational) -> Self {
        let values = vec![value; domain.class_count()];
        ClassFunction { domain, values }
    }

    pub fn zero(domain: Arc<Subgroup>) -> Self {
        Self::constant(domain, Rational::zero())
    }

    pub fn one(domain: Arc<Subgroup>) -> Self {
        Self::constant(domain, Rational::one())
    }

    /// Indicator of the class of `h` in `domain`. On an abelian domain this is
    /// the point mass at `h`.
    pub fn delta_at(domain: Arc<Subgroup>, h: &Permutation) -> Result<Self, Error> {
        let hi = domain.parent().index_of(h)?;
        let c = domain
            .class_of(hi)
            .ok_or_else(|| Error::NotInGroup(h.to_string()))?;
        Self::indicator(domain, c)
    }

    /// `1_C` for the class with index `class` in `domain`.
    pub fn indicator(domain: Arc<Subgroup>, class: usize) -> Result<Self, Error> {
        if class >= domain.class_count() {
            return Err(Error::InvalidClass(class));
        }
        let mut f = Self::zero(domain);
        f.values[class] = Rational::one();
        Ok(f)
    }

    /// The indicator functions of every class, in class order.
    pub fn delta_basis(domain: &Arc<Subgroup>) -> Vec<Self> {
        (0..domain.class_count())
            .map(|c| Self::indicator(Arc::clone(domain), c).unwrap())
            .collect()
    }

    pub fn domain(&self) -> &Arc<Subgroup> {
        &self.domain
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value_on_class(&self, class: usize) -> &Rational {
        &self.values[class]
    }

    /// Value at a parent element; zero outside the domain.
    pub fn eval_idx(&self, x: ElemIdx) -> Rational {
        match self.domain.class_of(x) {
            Some(c) => self.values[c].clone(),
            None => Rational::zero(),
        }
    }

    pub fn eval(&self, p: &Permutation) -> Result<Rational, Error> {
        Ok(self.eval_idx(self.domain.parent().index_of(p)?))
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    fn check_domain(&self, other: &ClassFunction) -> Result<(), Error> {
        if self.domain.same_elements(&other.domain) {
            Ok(())
        } else {
            Err(Error::DomainMismatch)
        }
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction, Error> {
        self.check_domain(other)?;
        Ok(ClassFunction {
            domain: Arc::clone(&self.domain),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, k: &Rational) -> ClassFunction {
        ClassFunction {
            domain: Arc::clone(&self.domain),
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    /// Pointwise equality as functions on the same element set.
    pub fn same_as(&self, other: &ClassFunction) -> bool {
        self.domain.same_elements(&other.domain) && self.values == other.values
    }

    /// `|H|⁻¹ Σ_{h∈H} φ(h) = Σ_C φ(C)|C| / |H|`.
    pub fn mean(&self) -> Rational {
        let total: Rational = self
            .domain
            .classes()
            .iter()
            .zip(&self.values)
            .map(|(c, v)| v * rational_from_usize(c.len()))
            .sum();
        total / rational_from_usize(self.domain.order())
    }

    /// `φ'(g) = Σ_i φ(g_i⁻¹ g g_i)` evaluated at every parent element.
    pub fn induce_elementwise(&self) -> Vec<Rational> {
        let g = self.domain.parent();
        (0..g.order()).map(|x| self.induced_value(x)).collect()
    }

    fn induced_value(&self, x: ElemIdx) -> Rational {
        let g = self.domain.parent();
        self.domain
            .transversal()
            .iter()
            .map(|&gi| self.eval_idx(g.conj(x, gi)))
            .sum()
    }

    /// Induction to the parent group, evaluated on class representatives of G.
    pub fn induce(&self) -> ClassFunction {
        let g = self.domain.parent();
        let whole = Arc::new(Subgroup::whole(g));
        let values = g
            .classes()
            .iter()
            .map(|c| self.induced_value(c.representative))
            .collect();
        ClassFunction {
            domain: whole,
            values,
        }
    }

    /// `mean_H(φ) − mean_G(Ind φ)`; always zero.
    pub fn reciprocity_gap(&self) -> Rational {
        self.mean() - self.induce().mean()
    }
}

impl fmt::Display for ClassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.domain.parent();
        f.write_str("{")?;
        for (k, (c, v)) in self.domain.classes().iter().zip(&self.values).enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", g.element(c.representative), v)?;
        }
        f.write_str("}")
    }
}

/// For `σ` of order `n` in `G`, returns `H = ⟨σ⟩` and
/// `φ = Σ_{e|n} (n / c_e) δ_{σ^e}` where `c_e` is the centralizer order of
/// `σ^e` in `G`. Its induction to `G` is `Σ_{e|n} 1_{C^e}`.
pub fn sigma_phi(
    group: &Arc<FiniteGroup>,
    sigma: &Permutation,
) -> Result<(Arc<Subgroup>, ClassFunction), Error> {
    let si = group.index_of(sigma)?;
    let n = group.element_order(si);
    let h = Arc::new(Subgroup::cyclic(group, si));
    let mut phi = ClassFunction::zero(Arc::clone(&h));
    for e in divisors(n) {
        let power = group.pow(si, e);
        let c_e = group.centralizer_order(group.element(power))?;
        let class = h.class_of(power).expect("power lies in the cyclic subgroup");
        phi.values[class] += Rational::new(BigInt::from(n), BigInt::from(c_e));
    }
    Ok((h, phi))
}

/// `Σ_{e|n} 1_{C^e}` on `G` for `σ` of order `n`.
pub fn power_class_indicator_sum(
    group: &Arc<FiniteGroup>,
    sigma: &Permutation,
) -> Result<ClassFunction, Error> {
    let si = group.index_of(sigma)?;
    let n = group.element_order(si);
    let c = group.class_of(si);
    let whole = Arc::new(Subgroup::whole(group));
    let mut total = ClassFunction::zero(Arc::clone(&whole));
    for e in divisors(n) {
        let ce = group.power_class(c, e)?;
        total = total.add(&ClassFunction::indicator(Arc::clone(&whole), ce)?)?;
    }
    Ok(total)
}
