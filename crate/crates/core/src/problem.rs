//! Feasible-set data and problem instances.
//!
//! A problem is `min f(x)` over `D = { x in X : <a, x> = beta }` with the box
//! `X = [lower_1, upper_1] x ... x [lower_n, upper_n]`.

use std::sync::Arc;

use crate::error::{check_len, Error, Result};
use crate::objective::{Objective, SignFlipped};

#[derive(Debug, Clone, PartialEq)]
pub struct BoxBounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl BoxBounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        check_len(lower.len(), upper.len())?;
        for (index, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidBounds {
                    index,
                    lower: lo,
                    upper: hi,
                });
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }
}

/// The single balance constraint `<a, x> = beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearEquality {
    pub a: Vec<f64>,
    pub beta: f64,
}

impl LinearEquality {
    pub fn new(a: Vec<f64>, beta: f64) -> Result<Self> {
        if let Some(i) = a.iter().position(|&v| v == 0.0 || !v.is_finite()) {
            return Err(Error::ZeroCoefficient(i));
        }
        if !beta.is_finite() {
            return Err(crate::error::invalid("beta", "must be finite"));
        }
        Ok(Self { a, beta })
    }
}

/// A validated instance with a nonempty feasible set.
#[derive(Debug, Clone)]
pub struct ProblemInstance {
    bounds: BoxBounds,
    equality: LinearEquality,
    objective: Arc<dyn Objective>,
}

/// Builds and validates an instance.
pub fn build_problem(
    bounds: BoxBounds,
    equality: LinearEquality,
    objective: Arc<dyn Objective>,
) -> Result<ProblemInstance> {
    ProblemInstance::new(bounds, equality, objective)
}

impl ProblemInstance {
    pub fn new(
        bounds: BoxBounds,
        equality: LinearEquality,
        objective: Arc<dyn Objective>,
    ) -> Result<Self> {
        let n = bounds.len();
        check_len(n, equality.a.len())?;
        check_len(n, objective.dim())?;
        if n < 2 {
            return Err(Error::TooSmall(n));
        }
        let (min, max) = balance_range(&bounds, &equality.a);
        let slack = 1e-12 * (1.0 + min.abs().max(max.abs()));
        if equality.beta < min - slack || equality.beta > max + slack {
            return Err(Error::Infeasible {
                beta: equality.beta,
                min,
                max,
            });
        }
        Ok(Self {
            bounds,
            equality,
            objective,
        })
    }

    pub fn n(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &BoxBounds {
        &self.bounds
    }

    pub fn lower(&self) -> &[f64] {
        &self.bounds.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.bounds.upper
    }

    pub fn equality(&self) -> &LinearEquality {
        &self.equality
    }

    pub fn a(&self) -> &[f64] {
        &self.equality.a
    }

    pub fn beta(&self) -> f64 {
        self.equality.beta
    }

    pub fn objective(&self) -> &Arc<dyn Objective> {
        &self.objective
    }

    /// Same feasible set, different objective.
    pub fn with_objective(&self, objective: Arc<dyn Objective>) -> Result<Self> {
        check_len(self.n(), objective.dim())?;
        Ok(Self {
            objective,
            ..self.clone()
        })
    }

    /// True when every constraint coefficient is positive.
    pub fn is_normalized(&self) -> bool {
        self.equality.a.iter().all(|&v| v > 0.0)
    }

    pub(crate) fn require_normalized(&self) -> Result<()> {
        match self.equality.a.iter().position(|&v| v < 0.0) {
            Some(i) => Err(Error::NegativeCoefficient(i)),
            None => Ok(()),
        }
    }

    /// `<a, x>`.
    pub fn balance(&self, x: &[f64]) -> f64 {
        self.equality.a.iter().zip(x).map(|(a, v)| a * v).sum()
    }

    /// The point `(beta / <a, e>) e`, which sits on the hyperplane.
    pub fn uniform_point(&self) -> Vec<f64> {
        let total: f64 = self.equality.a.iter().sum();
        vec![self.equality.beta / total; self.n()]
    }

    /// True when both instances describe the same feasible set.
    pub fn same_feasible_set(&self, other: &ProblemInstance) -> bool {
        self.bounds == other.bounds && self.equality == other.equality
    }
}

/// The range of `<a, x>` over the box.
fn balance_range(bounds: &BoxBounds, a: &[f64]) -> (f64, f64) {
    let mut min = 0.0;
    let mut max = 0.0;
    for ((&lo, &hi), &ai) in bounds.lower.iter().zip(&bounds.upper).zip(a) {
        let (p, q) = (ai * lo, ai * hi);
        min += p.min(q);
        max += p.max(q);
    }
    (min, max)
}

/// Records `y_i = sign(a_i) x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SignMap {
    signs: Vec<f64>,
}

impl SignMap {
    pub fn identity(n: usize) -> Self {
        Self {
            signs: vec![1.0; n],
        }
    }

    /// Entries must be `1.0` or `-1.0`.
    pub fn from_signs(signs: Vec<f64>) -> Result<Self> {
        if let Some(i) = signs.iter().position(|&s| s != 1.0 && s != -1.0) {
            return Err(crate::error::invalid(
                "signs",
                format!("entry {i} is {} (expected +1 or -1)", signs[i]),
            ));
        }
        Ok(Self { signs })
    }

    pub fn signs(&self) -> &[f64] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        self.signs.iter().all(|&s| s > 0.0)
    }

    /// Component-wise multiplication; the map is its own inverse.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(self.signs.len(), x.len())?;
        Ok(x.iter().zip(&self.signs).map(|(v, s)| v * s).collect())
    }
}

/// Maps a point of the normalized problem back to original coordinates.
pub fn denormalize_point(x: &[f64], map: &SignMap) -> Result<Vec<f64>> {
    map.apply(x)
}

/// Flips variables with negative coefficients so every `a_i > 0`.
///
/// For flipped coordinates the box `[lo, hi]` becomes `[-hi, -lo]` and the
/// objective is composed with the flip.
pub fn normalize_signs(p: &ProblemInstance) -> Result<(ProblemInstance, SignMap)> {
    let signs: Vec<f64> = p.a().iter().map(|&v| v.signum()).collect();
    let map = SignMap { signs };
    if map.is_identity() {
        return Ok((p.clone(), map));
    }
    let mut lower = Vec::with_capacity(p.n());
    let mut upper = Vec::with_capacity(p.n());
    for i in 0..p.n() {
        if map.signs[i] < 0.0 {
            lower.push(-p.upper()[i]);
            upper.push(-p.lower()[i]);
        } else {
            lower.push(p.lower()[i]);
            upper.push(p.upper()[i]);
        }
    }
    let a = p.a().iter().map(|v| v.abs()).collect();
    let objective = Arc::new(SignFlipped::new(
        p.objective().clone(),
        map.signs.clone(),
    ));
    let q = ProblemInstance::new(
        BoxBounds::new(lower, upper)?,
        LinearEquality::new(a, p.beta())?,
        objective,
    )?;
    Ok((q, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::{Linear, Quadratic};

    fn zero(n: usize) -> Arc<dyn Objective> {
        Arc::new(Linear { c: vec![0.0; n] })
    }

    fn unit_square(beta: f64) -> Result<ProblemInstance> {
        build_problem(
            BoxBounds::new(vec![0.0, 0.0], vec![1.0, 1.0])?,
            LinearEquality::new(vec![1.0, 1.0], beta)?,
            zero(2),
        )
    }

    #[test]
    fn build_accepts_feasible_and_rejects_empty() {
        assert!(unit_square(1.0).is_ok());
        assert!(matches!(unit_square(3.0), Err(Error::Infeasible { .. })));
        assert!(matches!(unit_square(-0.1), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn build_rejects_bad_data() {
        assert!(matches!(
            LinearEquality::new(vec![1.0, 0.0], 1.0),
            Err(Error::ZeroCoefficient(1))
        ));
        assert!(BoxBounds::new(vec![0.0, 1.0], vec![1.0, 1.0]).is_err());
        assert!(BoxBounds::new(vec![0.0], vec![1.0, 1.0]).is_err());
        let r = build_problem(
            BoxBounds::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap(),
            LinearEquality::new(vec![1.0, 1.0, 1.0], 1.0).unwrap(),
            zero(2),
        );
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
        let r = build_problem(
            BoxBounds::new(vec![0.0], vec![1.0]).unwrap(),
            LinearEquality::new(vec![1.0], 0.5).unwrap(),
            zero(1),
        );
        assert!(matches!(r, Err(Error::TooSmall(1))));
    }

    #[test]
    fn normalize_identity_when_all_positive() {
        let p = unit_square(1.0).unwrap();
        let (q, map) = normalize_signs(&p).unwrap();
        assert!(map.is_identity());
        assert_eq!(q.bounds(), p.bounds());
    }

    #[test]
    fn normalize_flips_negative_coordinates() {
        let p = build_problem(
            BoxBounds::new(vec![0.0, -3.0], vec![1.0, -1.0]).unwrap(),
            LinearEquality::new(vec![1.0, -2.0], 4.0).unwrap(),
            zero(2),
        )
        .unwrap();
        let (q, map) = normalize_signs(&p).unwrap();
        assert_eq!(q.a(), &[1.0, 2.0]);
        assert_eq!(q.lower(), &[0.0, 1.0]);
        assert_eq!(q.upper(), &[1.0, 3.0]);
        assert_eq!(map.signs(), &[1.0, -1.0]);
        assert_eq!(q.beta(), 4.0);
    }

    #[test]
    fn normalize_preserves_objective_values() {
        let obj = Arc::new(
            Quadratic::new(
                vec![vec![2.0, 0.5], vec![0.5, 1.0]],
                Some(vec![1.0, -3.0]),
            )
            .unwrap(),
        );
        let p = build_problem(
            BoxBounds::new(vec![0.0, -3.0], vec![1.0, -1.0]).unwrap(),
            LinearEquality::new(vec![1.0, -2.0], 4.0).unwrap(),
            obj,
        )
        .unwrap();
        let (q, map) = normalize_signs(&p).unwrap();
        // feasible x: x1 - 2 x2 = 4 with x1 in [0,1], x2 in [-3,-1]
        for &x1 in &[0.0, 0.13, 0.5, 0.77, 1.0] {
            let x = [x1, (x1 - 4.0) / 2.0];
            let y = map.apply(&x).unwrap();
            assert!((p.objective().value(&x) - q.objective().value(&y)).abs() < 1e-13);
            assert!((q.balance(&y) - 4.0).abs() < 1e-13);
            assert_eq!(denormalize_point(&y, &map).unwrap(), x.to_vec());
        }
    }

    #[test]
    fn denormalize_definition() {
        let map = SignMap::from_signs(vec![1.0, -1.0]).unwrap();
        assert_eq!(denormalize_point(&[0.5, 2.0], &map).unwrap(), vec![0.5, -2.0]);
        let id = SignMap::identity(3);
        assert_eq!(denormalize_point(&[1.0, 2.0, 3.0], &id).unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(denormalize_point(&[1.0], &map).is_err());
        assert!(SignMap::from_signs(vec![1.0, 0.5]).is_err());
    }

    proptest::proptest! {
        #[test]
        fn sign_map_is_involution(
            signs in proptest::collection::vec(proptest::bool::ANY, 1..8),
            seed in proptest::collection::vec(-10.0f64..10.0, 8),
        ) {
            let map = SignMap::from_signs(signs.iter().map(|&b| if b { 1.0 } else { -1.0 }).collect()).unwrap();
            let x = &seed[..signs.len()];
            let twice = map.apply(&map.apply(x).unwrap()).unwrap();
            proptest::prop_assert_eq!(twice, x.to_vec());
        }
    }
}
