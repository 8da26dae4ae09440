//! Invariant classification of the orthogonal coordinate webs generated by
//! nontrivial Killing tensors.
//!
//! Euclidean webs are decided by the zero pattern of `(I1, I3)` and checked
//! against the sign classes of `(C1, C2)`. Minkowski webs follow a decision
//! tree on `I3`, `I1`, `I′2` and the sign of `C2`. The pairs EC5/EC10 and
//! EC6/EC8 are not separated by these data and are reported jointly.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact_kernel::{rat, Field, Quadratic, Rational, SignClass};
use crate::frames_canonical::{decompose, decompose_float, EquivalenceClass};
use crate::invariant_engine::{covariants_of, invariants_of};
use crate::killing_spaces::{
    discriminant_of, eigen_precondition, general_tensor_components, EigenPrecondition, KTParams,
    NontrivialKT, Space,
};

/// Default relative tolerance for zero tests in floating point.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WebClass {
    Cartesian,
    Polar,
    Parabolic,
    EllipticHyperbolic,
    EC1,
    EC2,
    EC3,
    EC4,
    /// Two webs covering disjoint regions of the plane.
    EC5OrEC10,
    EC6OrEC8,
    EC7,
    EC9,
}

impl WebClass {
    pub fn tag(self) -> &'static str {
        match self {
            WebClass::Cartesian => "Cartesian",
            WebClass::Polar => "Polar",
            WebClass::Parabolic => "Parabolic",
            WebClass::EllipticHyperbolic => "EllipticHyperbolic",
            WebClass::EC1 => "EC1",
            WebClass::EC2 => "EC2",
            WebClass::EC3 => "EC3",
            WebClass::EC4 => "EC4",
            WebClass::EC5OrEC10 => "EC5_or_EC10",
            WebClass::EC6OrEC8 => "EC6_or_EC8",
            WebClass::EC7 => "EC7",
            WebClass::EC9 => "EC9",
        }
    }

    /// The class a canonical form of `ec` is expected to land in.
    pub fn expected_for(space: Space, ec: EquivalenceClass) -> WebClass {
        use EquivalenceClass as E;
        match (space, ec) {
            (Space::Euclidean, E::EC1) => WebClass::Cartesian,
            (Space::Euclidean, E::EC2) => WebClass::Polar,
            (Space::Euclidean, E::EC3) => WebClass::Parabolic,
            (Space::Euclidean, _) => WebClass::EllipticHyperbolic,
            (Space::Minkowski, E::EC1) => WebClass::EC1,
            (Space::Minkowski, E::EC2) => WebClass::EC2,
            (Space::Minkowski, E::EC3) => WebClass::EC3,
            (Space::Minkowski, E::EC4) => WebClass::EC4,
            (Space::Minkowski, E::EC5 | E::EC10) => WebClass::EC5OrEC10,
            (Space::Minkowski, E::EC6 | E::EC8) => WebClass::EC6OrEC8,
            (Space::Minkowski, E::EC7) => WebClass::EC7,
            (Space::Minkowski, E::EC9) => WebClass::EC9,
        }
    }
}

impl fmt::Display for WebClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Outcome of classifying a nontrivial part.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification<T> {
    pub class: WebClass,
    /// EC6 or EC8 from the literal `I*` rule, only for [`WebClass::EC6OrEC8`].
    pub subtag: Option<EquivalenceClass>,
    /// `(I1, I2, I3)` of the input (before any sign normalization).
    pub invariants: [T; 3],
    /// Sign classes of `(C1, C2)` of the tensor actually classified.
    pub sign_classes: [SignClass; 2],
    /// Whether the Minkowski tensor was replaced by its negative to make `I3 > 0`.
    pub sign_normalized: bool,
    pub i_prime_2: Option<T>,
    /// `I1 (1 − 1/I3)` on the `I1 < 0` branch.
    pub istar: Option<T>,
    pub caveats: Vec<String>,
}

fn embed<T: Field>(nt: &[T; 5]) -> [T; 6] {
    let [p1, p3, p4, p5, p6] = nt.clone();
    [p1, T::zero(), p3, p4, p5, p6]
}

/// Coefficients of a function of the point known to be a quadratic, by
/// sampling it at six points.
fn quadratic_of<T: Field>(f: impl Fn(&T, &T) -> T) -> Quadratic<T> {
    let (zero, one) = (T::zero(), T::one());
    let minus = -one.clone();
    let half = T::one() / T::from_i64(2);
    let constant = f(&zero, &zero);
    let (up, um) = (f(&one, &zero), f(&minus, &zero));
    let (vp, vm) = (f(&zero, &one), f(&zero, &minus));
    let uu = (up.clone() + um.clone()) * half.clone() - constant.clone();
    let u = (up - um) * half.clone();
    let vv = (vp.clone() + vm.clone()) * half.clone() - constant.clone();
    let v = (vp - vm) * half;
    let uv = f(&one, &one) - uu.clone() - vv.clone() - u.clone() - v.clone() - constant.clone();
    Quadratic { uu, uv, vv, u, v, constant }
}

fn sign_classes_of<T: Field>(space: Space, p: &[T; 6], tol: f64) -> [SignClass; 2] {
    [0, 1].map(|i| quadratic_of(|u: &T, v: &T| covariants_of(space, p, u, v)[i].clone()).sign_class(tol))
}

fn is_zero<T: Field>(value: &T, tol: f64) -> bool {
    value.signum_tol(tol) == 0
}

/// Euclidean classification by the zero pattern of `(I1, I3)`, cross-checked
/// against the covariant criteria on `(C1, C2)`.
pub fn classify_euclidean<T: Field>(nt: &[T; 5], tol: f64) -> Result<Classification<T>> {
    let space = Space::Euclidean;
    let scale = nt.iter().map(Field::magnitude).fold(0.0, f64::max);
    if nt.iter().all(|c| is_zero(c, tol * scale)) {
        return Err(Error::ZeroTensor);
    }
    let p = embed(nt);
    let invariants = invariants_of(space, &p);
    let (i1_zero, i3_zero) = (is_zero(&invariants[0], tol * scale.powi(4)), is_zero(&invariants[2], tol * scale));
    let by_invariants = match (i1_zero, i3_zero) {
        (true, true) => WebClass::Cartesian,
        (true, false) => WebClass::Polar,
        (false, true) => WebClass::Parabolic,
        (false, false) => WebClass::EllipticHyperbolic,
    };
    let sign_classes = sign_classes_of(space, &p, tol);
    let by_covariants = match sign_classes {
        [SignClass::Zero, SignClass::Zero] => Some(WebClass::Cartesian),
        [SignClass::Pos, SignClass::Zero] => Some(WebClass::Polar),
        [SignClass::NonzeroConst, SignClass::NonzeroConst] => Some(WebClass::Parabolic),
        [SignClass::Pos, SignClass::Indef] => Some(WebClass::EllipticHyperbolic),
        _ => None,
    };
    if by_covariants != Some(by_invariants) {
        return Err(Error::Unclassified(format!(
            "invariants give {by_invariants} but (C1, C2) = ({}, {})",
            sign_classes[0], sign_classes[1]
        )));
    }
    Ok(Classification {
        class: by_invariants,
        subtag: None,
        invariants,
        sign_classes,
        sign_normalized: false,
        i_prime_2: None,
        istar: None,
        caveats: Vec::new(),
    })
}

/// Minkowski classification.
///
/// `I3 = 0`: `I1 ≠ 0` gives EC4; otherwise `I′2` separates EC1 (zero) from
/// EC3. `I3 ≠ 0`: the tensor is first replaced by its negative if `I3 < 0`
/// (same web, only `I3` changes sign); then `I1 = 0` with `C2 ≡ 0` is EC2, with `C2`
/// positive semidefinite EC7; `I1 > 0` with `C2` positive is EC5/EC10,
/// negative EC9; `I1 < 0` is EC6/EC8 with a subtag from `I* = I1(1 − 1/I3)`.
pub fn classify_minkowski<T: Field>(nt: &[T; 5], tol: f64) -> Result<Classification<T>> {
    let space = Space::Minkowski;
    let scale = nt.iter().map(Field::magnitude).fold(0.0, f64::max);
    if nt.iter().all(|c| is_zero(c, tol * scale)) {
        return Err(Error::ZeroTensor);
    }
    let p = embed(nt);
    let invariants = invariants_of(space, &p);
    let [i1, _, i3] = invariants.clone();
    let i1_sign = i1.signum_tol(tol * scale.powi(4));
    let i3_sign = i3.signum_tol(tol * scale);
    let mut caveats = Vec::new();
    let result = |class, sign_classes, sign_normalized, i_prime_2, istar, subtag, caveats| {
        Ok(Classification { class, subtag, invariants: invariants.clone(), sign_classes, sign_normalized, i_prime_2, istar, caveats })
    };

    if i3_sign == 0 {
        let sign_classes = sign_classes_of(space, &p, tol);
        if i1_sign != 0 {
            return result(WebClass::EC4, sign_classes, false, None, None, None, caveats);
        }
        // I1 = (α4² − α5²)² here, so I′1 = 0 and I′2 is defined.
        let [p1, _, p3, p4, p5, _] = p.clone();
        let ip2 = T::from_i64(2) * p3 * p4.clone() * p5 - p1 * p4.square();
        let class = if is_zero(&ip2, tol * scale.powi(3)) { WebClass::EC1 } else { WebClass::EC3 };
        return result(class, sign_classes, false, Some(ip2), None, None, caveats);
    }

    let normalized = i3_sign < 0;
    let (p, i3) = if normalized {
        caveats.push("sign normalization: I3 < 0, classified -K (same web)".to_string());
        (p.map(|c| -c), -i3)
    } else {
        (p, i3)
    };
    let sign_classes = sign_classes_of(space, &p, tol);
    let c2 = sign_classes[1];
    let class = match (i1_sign, c2) {
        (0, SignClass::Zero) => WebClass::EC2,
        (0, SignClass::Pos) => WebClass::EC7,
        (1, SignClass::Pos) => WebClass::EC5OrEC10,
        (1, SignClass::Neg) => WebClass::EC9,
        (-1, _) => WebClass::EC6OrEC8,
        _ => {
            return Err(Error::Unclassified(format!(
                "no class for I1 sign {i1_sign}, I3 > 0, C2 {c2}"
            )))
        }
    };
    let (mut istar, mut subtag) = (None, None);
    match class {
        WebClass::EC5OrEC10 => caveats.push(
            "EC5 and EC10 are not separated by invariants; they cover disjoint regions of the plane".to_string(),
        ),
        WebClass::EC6OrEC8 => {
            let value = i1.clone() * (T::one() - T::one() / i3);
            subtag = Some(if is_zero(&value, tol * scale.powi(4)) { EquivalenceClass::EC8 } else { EquivalenceClass::EC6 });
            istar = Some(value);
            caveats.push(
                "EC6 and EC8 are merged: I* depends on (I1, I3) alone and a real boost followed by x -> -x maps the EC6 canonical form to EC8 shape; subtag is indicative only"
                    .to_string(),
            );
        }
        _ => {}
    }
    result(class, sign_classes, normalized, None, istar, subtag, caveats)
}

pub fn classify<T: Field>(space: Space, nt: &[T; 5], tol: f64) -> Result<Classification<T>> {
    match space {
        Space::Euclidean => classify_euclidean(nt, tol),
        Space::Minkowski => classify_minkowski(nt, tol),
    }
}

/// Exact classification of a nontrivial part.
pub fn classify_nontrivial(nt: &NontrivialKT) -> Result<Classification<Rational>> {
    classify(nt.space, &nt.values, 0.0)
}

/// Full report: decomposition, eigenvalue precondition and classification.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport<T> {
    pub space: Space,
    pub input: [T; 6],
    pub l0: T,
    pub nontrivial: [T; 5],
    /// `None` exactly when the tensor is a multiple of the metric.
    pub classification: Option<Classification<T>>,
    pub eigen_precondition: EigenPrecondition,
    pub caveats: Vec<String>,
}

impl<T> ClassificationReport<T> {
    pub fn class(&self) -> Option<WebClass> {
        self.classification.as_ref().map(|c| c.class)
    }
}

fn finish<T: Field>(
    space: Space,
    input: [T; 6],
    l0: T,
    nontrivial: [T; 5],
    eigen: EigenPrecondition,
    tol: f64,
) -> Result<ClassificationReport<T>> {
    let mut caveats = Vec::new();
    let classification = match classify(space, &nontrivial, tol) {
        Err(Error::ZeroTensor) => {
            caveats.push("trivial (multiple of metric), no web".to_string());
            None
        }
        other => Some(other?),
    };
    if let Some(c) = &classification {
        caveats.extend(c.caveats.iter().cloned());
        if eigen == EigenPrecondition::Complex {
            caveats.push("warning: eigenvalues complex on sampled region".to_string());
        }
    }
    Ok(ClassificationReport { space, input, l0, nontrivial, classification, eigen_precondition: eigen, caveats })
}

/// Exact full classification.
pub fn classify_full(p: &KTParams) -> Result<ClassificationReport<Rational>> {
    let (l0, nt) = decompose(p);
    finish(p.space, p.values.clone(), l0, nt.values, eigen_precondition(p), 0.0)
}

/// Floating-point full classification with relative zero tolerance `tol`.
pub fn classify_full_float(space: Space, p: &[f64; 6], tol: f64) -> Result<ClassificationReport<f64>> {
    let (l0, nt) = decompose_float(space, p);
    finish(space, *p, l0, nt, eigen_precondition_float(space, p, tol), tol)
}

/// Float counterpart of [`eigen_precondition`] on the same 9×9 grid.
pub fn eigen_precondition_float(space: Space, p: &[f64; 6], tol: f64) -> EigenPrecondition {
    let scale = p.iter().fold(0.0f64, |m, c| m.max(c.abs())).max(f64::MIN_POSITIVE);
    let samples: Vec<f64> = (-4..=4)
        .flat_map(|i| (-4..=4).map(move |j| (i, j)))
        .map(|(i, j)| {
            let (u, v) = (f64::from(i) / 2.0, f64::from(j) / 2.0);
            discriminant_of(space, &general_tensor_components(space, p, &u, &v))
        })
        .collect();
    // The discriminant is quartic in the parameters and the grid reaches |u| = 2.
    let zero = tol * (scale * 16.0).powi(2);
    if samples.iter().all(|d| d.abs() <= zero) {
        EigenPrecondition::Degenerate
    } else if samples.iter().any(|d| *d > zero) {
        EigenPrecondition::Satisfied
    } else {
        EigenPrecondition::Complex
    }
}

/// Canonical representative of a class as a full exact parameter vector,
/// using `k² = 1` where one is needed.
pub fn representative(space: Space, ec: EquivalenceClass) -> Result<KTParams> {
    let k2 = ec.needs_k2(space).then(|| rat(1, 1));
    let nt = crate::frames_canonical::canonical_form(space, ec, k2.as_ref())?;
    Ok(crate::killing_spaces::embed_nontrivial(&nt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_kernel::{int, rationals};
    use crate::frames_canonical::canonical_form;
    use crate::killing_spaces::embed_nontrivial;

    fn nt(space: Space, values: &[(i64, i64)]) -> NontrivialKT {
        NontrivialKT::new(space, rationals(values)).unwrap()
    }

    #[test]
    fn euclidean_examples() {
        let cases = [
            ([(1, 1), (0, 1), (0, 1), (0, 1), (0, 1)], WebClass::Cartesian),
            ([(0, 1), (0, 1), (0, 1), (1, 1), (0, 1)], WebClass::Parabolic),
            ([(1, 1), (0, 1), (0, 1), (0, 1), (1, 1)], WebClass::EllipticHyperbolic),
            ([(0, 1), (0, 1), (0, 1), (0, 1), (1, 1)], WebClass::Polar),
        ];
        for (values, class) in cases {
            assert_eq!(classify_nontrivial(&nt(Space::Euclidean, &values)).unwrap().class, class);
        }
    }

    #[test]
    fn minkowski_examples() {
        let m = |v: &[(i64, i64)]| classify_nontrivial(&nt(Space::Minkowski, v)).unwrap();
        assert_eq!(m(&[(0, 1), (0, 1), (0, 1), (0, 1), (1, 1)]).class, WebClass::EC2);
        let ec7 = m(&[(-1, 2), (-1, 4), (0, 1), (0, 1), (1, 4)]);
        assert_eq!((ec7.class, ec7.sign_classes[1]), (WebClass::EC7, SignClass::Pos));
        let ec5 = m(&[(2, 1), (0, 1), (0, 1), (0, 1), (-1, 4)]);
        assert_eq!(ec5.class, WebClass::EC5OrEC10);
        assert!(ec5.sign_normalized);
        let ec6 = m(&[(1, 4), (1, 4), (0, 1), (0, 1), (1, 4)]);
        assert_eq!((ec6.class, ec6.subtag), (WebClass::EC6OrEC8, Some(EquivalenceClass::EC6)));
        assert_eq!(ec6.istar, Some(rat(9, 256)));
        assert!(!ec6.caveats.is_empty());
    }

    #[test]
    fn negative_semidefinite_c2_with_vanishing_i1_has_no_row() {
        let r = classify_nontrivial(&nt(Space::Minkowski, &[(1, 2), (1, 4), (0, 1), (0, 1), (1, 4)]));
        assert!(matches!(r, Err(Error::Unclassified(_))), "{r:?}");
    }

    #[test]
    fn every_canonical_form_lands_in_its_row() {
        for space in Space::ALL {
            for &ec in EquivalenceClass::of_space(space) {
                let p = representative(space, ec).unwrap();
                let report = classify_full(&p).unwrap();
                assert_eq!(report.class(), Some(WebClass::expected_for(space, ec)), "{space} {ec}");
            }
        }
    }

    #[test]
    fn full_report_examples() {
        for space in Space::ALL {
            let r = classify_full(&space.metric_params()).unwrap();
            assert_eq!(r.class(), None);
            assert!(r.caveats[0].contains("trivial"));
        }
        let ec2 = embed_nontrivial(&canonical_form(Space::Minkowski, EquivalenceClass::EC2, None).unwrap());
        let r = classify_full(&Space::Minkowski.metric_params().add(&ec2)).unwrap();
        assert_eq!((r.class(), r.l0.clone()), (Some(WebClass::EC2), int(1)));
        let ec4 = embed_nontrivial(&canonical_form(Space::Euclidean, EquivalenceClass::EC4, None).unwrap());
        let r = classify_full(&ec4.scale(&int(3))).unwrap();
        assert_eq!(r.class(), Some(WebClass::EllipticHyperbolic));
    }

    #[test]
    fn float_mode_agrees_on_canonical_forms() {
        for space in Space::ALL {
            for &ec in EquivalenceClass::of_space(space) {
                let p = representative(space, ec).unwrap();
                let exact = classify_full(&p).unwrap();
                let floats = p.values.clone().map(|v| crate::exact_kernel::rational_to_f64(&v));
                let float = classify_full_float(space, &floats, FLOAT_TOLERANCE).unwrap();
                assert_eq!(exact.class(), float.class(), "{space} {ec}");
                assert_eq!(exact.eigen_precondition, float.eigen_precondition, "{space} {ec}");
            }
        }
    }
}
