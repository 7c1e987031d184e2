//! Quadratic inequalities satisfied by normalized elements of the dual of
//! `L_4 ⊗ L_4 ⊗ L_4`.
//!
//! Every inequality is a weighted sum of squared coordinates over the
//! classes below (the root `x_000` excluded), with `a` an axis:
//!
//! * `A[a]`: coordinates whose only nonzero index sits on axis `a`,
//! * `B[a]`: coordinates whose only zero index sits on axis `a`,
//! * `C`: coordinates with all three indices nonzero.

use serde::Serialize;

use super::dual::DualElement;
use super::tensor::Tensor3;
use crate::error::{Error, Result};

/// Squared-coordinate mass of each class.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassMass {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub c: f64,
}

impl ClassMass {
    pub fn of(x: &Tensor3) -> Self {
        let mut m = ClassMass { a: [0.0; 3], b: [0.0; 3], c: 0.0 };
        let [n1, n2, n3] = x.dims();
        for i in 0..n1 {
            for j in 0..n2 {
                for k in 0..n3 {
                    let v = x.get(i, j, k);
                    let sq = v * v;
                    let nz = [i != 0, j != 0, k != 0];
                    match nz.iter().filter(|&&b| b).count() {
                        1 => m.a[nz.iter().position(|&b| b).unwrap()] += sq,
                        2 => m.b[nz.iter().position(|&b| !b).unwrap()] += sq,
                        3 => m.c += sq,
                        _ => {}
                    }
                }
            }
        }
        m
    }

    pub fn total(&self) -> f64 {
        self.a.iter().sum::<f64>() + self.b.iter().sum::<f64>() + self.c
    }
}

/// Integer weights on the classes plus a right-hand side, all scaled by `denom`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IntForm {
    pub a: [i64; 3],
    pub b: [i64; 3],
    pub c: i64,
    pub rhs: i64,
    pub denom: i64,
}

impl IntForm {
    pub const fn uniform(a: i64, b: i64, c: i64, rhs: i64, denom: i64) -> Self {
        Self { a: [a; 3], b: [b; 3], c, rhs, denom }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.denom, o.denom, "forms on different scales");
        Self {
            a: std::array::from_fn(|i| self.a[i] + o.a[i]),
            b: std::array::from_fn(|i| self.b[i] + o.b[i]),
            c: self.c + o.c,
            rhs: self.rhs + o.rhs,
            denom: self.denom,
        }
    }

    pub fn times(&self, s: i64) -> Self {
        Self { a: self.a.map(|v| v * s), b: self.b.map(|v| v * s), c: self.c * s, rhs: self.rhs * s, denom: self.denom }
    }

    /// Same inequality with the scale `denom` reset to `d` (exact only).
    pub fn rescaled(&self, d: i64) -> Option<Self> {
        let all = self.a.iter().chain(&self.b).chain([&self.c, &self.rhs]);
        if all.clone().any(|v| (v * d) % self.denom != 0) {
            return None;
        }
        let f = |v: i64| v * d / self.denom;
        Some(Self { a: self.a.map(f), b: self.b.map(f), c: f(self.c), rhs: f(self.rhs), denom: d })
    }

    pub fn lhs(&self, m: &ClassMass) -> f64 {
        let d = self.denom as f64;
        let s: f64 = (0..3).map(|i| self.a[i] as f64 * m.a[i] + self.b[i] as f64 * m.b[i]).sum::<f64>()
            + self.c as f64 * m.c;
        s / d
    }

    pub fn rhs_value(&self) -> f64 {
        self.rhs as f64 / self.denom as f64
    }
}

/// Per-axis form with axis `a` distinguished: `A[a] + B[a] + C ≤ 7`.
pub fn prop_form(axis: usize) -> IntForm {
    let mut f = IntForm { a: [0; 3], b: [0; 3], c: 1, rhs: 7, denom: 1 };
    f.a[axis] = 1;
    f.b[axis] = 1;
    f
}

/// `⅓ΣA + ⅓ΣB + C ≤ 7`, stored over denominator 3.
pub const UNGL1: IntForm = IntForm::uniform(1, 1, 3, 21, 3);

/// Ball-cone form with axis `a` distinguished, over denominator 5:
/// weight 5 on `A` off `a` and on `B[a]`, weight 3 elsewhere, right side 27.
pub fn ball_form(axis: usize) -> IntForm {
    let mut f = IntForm::uniform(5, 3, 3, 27, 5);
    f.a[axis] = 3;
    f.b[axis] = 5;
    f
}

/// `13ΣA + 11ΣB + 9C ≤ 81`.
pub const WEIGHTED_81: IntForm = IntForm::uniform(13, 11, 9, 81, 1);
/// `7ΣA + 6ΣB + 6C ≤ 51`.
pub const WEIGHTED_51: IntForm = IntForm::uniform(7, 6, 6, 51, 1);
/// `ΣA + ΣB + C ≤ 17/2`.
pub const NONROOT: IntForm = IntForm::uniform(2, 2, 2, 17, 2);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCheck {
    /// Sum of the three 5×ball forms equals `WEIGHTED_81`.
    pub ball_sum_is_81: bool,
    /// `(WEIGHTED_81 + 3·UNGL1) / 2 = WEIGHTED_51`.
    pub combination_is_51: bool,
    /// Sum of the three per-axis forms equals `3·UNGL1`.
    pub prop_sum_is_ungl1: bool,
    /// `7ΣA + 6ΣB + 6C ≤ 51` with `ΣA, ΣB, C ≥ 0` forces non-root mass ≤ 51/6 = 17/2.
    pub nonroot_from_51: bool,
}

impl CoefficientCheck {
    pub fn all(&self) -> bool {
        self.ball_sum_is_81 && self.combination_is_51 && self.prop_sum_is_ungl1 && self.nonroot_from_51
    }
}

/// Checks how the families combine, in exact integer arithmetic.
pub fn coefficient_identities() -> CoefficientCheck {
    let ball_sum = ball_form(0).add(&ball_form(1)).add(&ball_form(2)).times(5).rescaled(1);
    let ungl1_times3 = UNGL1.times(3).rescaled(1).expect("integral");
    let combined = WEIGHTED_81.add(&ungl1_times3);
    let halved = IntForm {
        a: combined.a.map(|v| v / 2),
        b: combined.b.map(|v| v / 2),
        c: combined.c / 2,
        rhs: combined.rhs / 2,
        denom: 1,
    };
    let even = combined.a.iter().chain(&combined.b).chain([&combined.c, &combined.rhs]).all(|v| v % 2 == 0);
    let prop_sum = prop_form(0).add(&prop_form(1)).add(&prop_form(2));
    let min_weight = WEIGHTED_51.a.iter().chain(&WEIGHTED_51.b).chain([&WEIGHTED_51.c]).copied().min().unwrap();
    CoefficientCheck {
        ball_sum_is_81: ball_sum == Some(WEIGHTED_81),
        combination_is_51: even && halved == WEIGHTED_51,
        prop_sum_is_ungl1: prop_sum == ungl1_times3,
        // 51 / min_weight = 17/2 exactly.
        nonroot_from_51: min_weight == 6 && 2 * WEIGHTED_51.rhs == 17 * min_weight,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Inequality {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`; negative means violated.
    pub margin: f64,
}

impl Inequality {
    fn eval(name: impl Into<String>, form: &IntForm, m: &ClassMass) -> Self {
        let lhs = form.lhs(m);
        let rhs = form.rhs_value();
        Self { name: name.into(), lhs, rhs, margin: rhs - lhs }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub mass: ClassMass,
    pub prop_axis: [Inequality; 3],
    pub ungl1: Inequality,
    pub ball_axis: [Inequality; 3],
    pub weighted_81: Inequality,
    pub weighted_51: Inequality,
    pub nonroot: Inequality,
}

impl InequalityReport {
    pub fn all(&self) -> Vec<&Inequality> {
        let mut v: Vec<&Inequality> = self.prop_axis.iter().collect();
        v.push(&self.ungl1);
        v.extend(self.ball_axis.iter());
        v.extend([&self.weighted_81, &self.weighted_51, &self.nonroot]);
        v
    }

    pub fn min_margin(&self) -> f64 {
        self.all().iter().map(|i| i.margin).fold(f64::INFINITY, f64::min)
    }

    /// Inequalities with `margin < −tol`.
    pub fn violations(&self, tol: f64) -> Vec<&Inequality> {
        self.all().into_iter().filter(|i| i.margin < -tol).collect()
    }
}

/// Evaluates every family on a normalized dual element.
pub fn inequality_suite(d: &DualElement) -> Result<InequalityReport> {
    let x000 = d.t.get(0, 0, 0);
    if !d.normalized || (x000 - 1.0).abs() > 1e-12 {
        return Err(Error::NotNormalized(x000));
    }
    let m = ClassMass::of(&d.t);
    Ok(InequalityReport {
        mass: m,
        prop_axis: std::array::from_fn(|a| Inequality::eval(format!("prop_axis{}", a + 1), &prop_form(a), &m)),
        ungl1: Inequality::eval("ungl1", &UNGL1, &m),
        ball_axis: std::array::from_fn(|a| Inequality::eval(format!("ball_axis{}", a + 1), &ball_form(a), &m)),
        weighted_81: Inequality::eval("weighted_81", &WEIGHTED_81, &m),
        weighted_51: Inequality::eval("weighted_51", &WEIGHTED_51, &m),
        nonroot: Inequality::eval("nonroot", &NONROOT, &m),
    })
}
