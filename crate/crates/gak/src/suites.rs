//! Seeded property suites shared by `gak check` and the acceptance tests.
//!
//! Every suite is deterministic for a given seed. Random elements draw
//! coefficients uniformly from [-1, 1]; inputs whose Study norm falls below
//! the 1e-6 threshold (or that leave the real normalization branch) are
//! rejected and resampled, with the rejection count reported.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::doc::AlgebraTag;
use crate::kernels::{self, EVEN_4D, EVEN_R301, EVEN_R41};
use crate::multivector::Multivector;
use crate::rotor::{
    exp_bivector, exp_series, invariant_split, log_rotor, normalize, sqrt_rotor,
};
use crate::signature::{Blade, Signature};
use crate::study::StudyNumber;

/// Study-norm threshold below which a random input is resampled.
pub const SAMPLE_REJECT_NORM: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct PropertyResult {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub limit: f64,
}

impl PropertyResult {
    pub fn passed(&self) -> bool {
        self.failures == 0 && (self.cases == 0 || self.max_residual <= self.limit)
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub count: usize,
    pub rejections: usize,
    pub properties: Vec<PropertyResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(PropertyResult::passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} seed={} count={} rejected={}",
            self.suite, self.seed, self.count, self.rejections
        )?;
        for p in &self.properties {
            writeln!(
                f,
                "  {} {:<44} max residual {:.3e} (limit {:.1e}, {} cases, {} hard failures)",
                if p.passed() { "PASS" } else { "FAIL" },
                p.name,
                p.max_residual,
                p.limit,
                p.cases,
                p.failures,
            )?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

struct PropertyTracker {
    result: PropertyResult,
}

impl PropertyTracker {
    fn new(name: impl Into<String>, limit: f64) -> Self {
        PropertyTracker {
            result: PropertyResult {
                name: name.into(),
                cases: 0,
                failures: 0,
                max_residual: 0.0,
                limit,
            },
        }
    }

    fn record(&mut self, residual: f64) {
        self.result.cases += 1;
        if residual.is_finite() {
            self.result.max_residual = self.result.max_residual.max(residual);
        } else {
            self.result.failures += 1;
        }
    }

    fn fail(&mut self) {
        self.result.cases += 1;
        self.result.failures += 1;
    }

    fn finish(self) -> PropertyResult {
        self.result
    }
}

/// The four algebras with dedicated kernels.
pub fn featured_algebras() -> [(AlgebraTag, Signature); 4] {
    [
        (AlgebraTag::R4, Signature::r4()),
        (AlgebraTag::R31, Signature::r31()),
        (AlgebraTag::R301, Signature::r301()),
        (AlgebraTag::R41, Signature::r41()),
    ]
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn masks_of_grade(sig: Signature, parity_even: bool, only_grade: Option<usize>) -> Vec<usize> {
    (0..sig.blade_count())
        .filter(|&m| {
            let g = (m as u32).count_ones() as usize;
            match only_grade {
                Some(k) => g == k,
                None => g.is_multiple_of(2) == parity_even,
            }
        })
        .collect()
}

/// Uniform [-1, 1] coefficients over the even subalgebra.
pub fn sample_even(rng: &mut impl Rng, sig: Signature) -> Multivector {
    let mut mv = Multivector::zero(sig);
    for m in masks_of_grade(sig, true, None) {
        mv.coeffs_mut()[m] = rng.gen_range(-1.0..=1.0);
    }
    mv
}

/// Uniform bivector rescaled to a coefficient norm drawn from
/// (0.05, max_norm).
pub fn sample_bivector(rng: &mut impl Rng, sig: Signature, max_norm: f64) -> Multivector {
    let mut mv = Multivector::zero(sig);
    for m in masks_of_grade(sig, true, Some(2)) {
        mv.coeffs_mut()[m] = rng.gen_range(-1.0..=1.0);
    }
    let norm = mv.coeff_l2_norm();
    if norm == 0.0 {
        return mv;
    }
    let target = rng.gen_range(0.05..max_norm);
    mv * (target / norm)
}

/// Whether X stays inside the sampled population: X reverse(X) must have a
/// real Study norm comfortably above zero and a usable principal branch.
pub fn is_normalizable_sample(x: &Multivector) -> bool {
    let m = x.gp(&x.reverse());
    let s2 = match StudyNumber::from_multivector(&m, crate::DEFAULT_TOL) {
        Ok(s) => s,
        Err(_) => return false,
    };
    let scale = s2.magnitude().max(1.0);
    let n2 = s2.norm_squared();
    if n2 < (SAMPLE_REJECT_NORM * scale) * (SAMPLE_REJECT_NORM * scale) {
        return false;
    }
    // stay on the c_+ branch the kernels implement
    s2.scalar() + n2.sqrt() > SAMPLE_REJECT_NORM * scale
}

/// Random even element that normalizes on the principal branch; counts the
/// rejected draws.
pub fn sample_nonsingular_even(
    rng: &mut impl Rng,
    sig: Signature,
    rejections: &mut usize,
) -> Multivector {
    loop {
        let x = sample_even(rng, sig);
        if is_normalizable_sample(&x) {
            return x;
        }
        *rejections += 1;
    }
}

/// Largest coefficient norm a unit-square factor plane may have; rejects
/// nearly-null planes whose rescaling would degrade conditioning.
const MAX_PLANE_COEFF_NORM: f64 = 6.0;

/// Bivector with controlled factor angles: rotation angle in
/// (0.05, 3.0), boost rapidity in (0.05, 1.5), translation magnitude in
/// (0.1, 2.0), distinct squares, and for double rotations an angle sum
/// at least 0.05 below pi.
///
/// The sum bound keeps the population principal: at theta+ + theta- = pi a
/// double rotation acquires a second log representative with both angles
/// under pi (shift both by pi, flip both planes) and 1 + R loses its Study
/// inverse, so both the logarithm and the principal square root are only
/// well posed on the sum-below-pi side.
pub fn sample_principal_bivector(rng: &mut impl Rng, sig: Signature) -> Multivector {
    for _ in 0..1024 {
        let raw = sample_bivector(rng, sig, 2.0);
        let split = match invariant_split(&raw) {
            Ok(s) => s,
            Err(_) => continue,
        };
        if split.degenerate {
            continue;
        }
        // rotation factor is mandatory
        if split.lambda_minus > -1e-6 {
            continue;
        }
        let rot_dir = &split.b_minus * (1.0 / (-split.lambda_minus).sqrt());
        if rot_dir.coeff_l2_norm() > MAX_PLANE_COEFF_NORM {
            continue;
        }
        let theta_minus: f64 = rng.gen_range(0.05..3.0);

        let plus_norm = split.b_plus.coeff_l2_norm();
        if plus_norm < 1e-9 {
            return rot_dir * theta_minus; // simple rotation
        }
        // classify the second factor by its square relative to its own size,
        // so a small factor is a small rotation/boost and not a fake null
        let rel = split.lambda_plus / (plus_norm * plus_norm);
        let b_plus = if rel > 1e-6 {
            // boost
            let dir = &split.b_plus * (1.0 / split.lambda_plus.sqrt());
            if dir.coeff_l2_norm() > MAX_PLANE_COEFF_NORM {
                continue;
            }
            let phi = rng.gen_range(0.05..1.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            dir * phi
        } else if rel < -1e-6 {
            // second rotation: distinct squares, angle sum below pi
            let dir = &split.b_plus * (1.0 / (-split.lambda_plus).sqrt());
            if dir.coeff_l2_norm() > MAX_PLANE_COEFF_NORM {
                continue;
            }
            let cap = (std::f64::consts::PI - 0.05 - theta_minus).min(3.0);
            if cap <= 0.05 {
                continue;
            }
            let mut theta_plus: f64 = rng.gen_range(0.05..cap);
            let mut ok = false;
            for _ in 0..64 {
                if (theta_plus - theta_minus).abs() >= 0.05 {
                    ok = true;
                    break;
                }
                theta_plus = rng.gen_range(0.05..cap);
            }
            if !ok {
                continue;
            }
            dir * theta_plus
        } else {
            // translation-like null factor
            let t = rng.gen_range(0.1..2.0);
            &split.b_plus * (t / plus_norm)
        };
        return &(rot_dir * theta_minus) + &b_plus;
    }
    panic!("principal bivector sampler failed to converge; signature unsuitable");
}

/// Random unit-ish vector with Euclidean coefficient norm >= 0.1.
fn sample_vector(rng: &mut impl Rng, sig: Signature) -> Multivector {
    loop {
        let comps: Vec<f64> = (0..sig.n()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let mv = Multivector::vector(sig, &comps);
        if mv.coeff_l2_norm() >= 0.1 {
            return mv;
        }
    }
}

/// Rotor condition after normalization across the featured algebras.
pub fn rotor_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rng = seeded_rng(seed);
    let mut rejections = 0usize;
    let mut props = Vec::new();
    for (tag, sig) in featured_algebras() {
        let mut cond = PropertyTracker::new(format!("{tag} rotor condition"), 1e-9);
        let mut recon = PropertyTracker::new(format!("{tag} S*R reconstructs X"), 1e-9);
        for _ in 0..count {
            let x = sample_nonsingular_even(&mut rng, sig, &mut rejections);
            match normalize(&x) {
                Ok(parts) => {
                    cond.record(parts.rotor.condition_residual());
                    let back = parts.scale.to_multivector().gp(parts.rotor.as_multivector());
                    recon.record(back.max_diff(&x));
                }
                Err(_) => {
                    cond.fail();
                    recon.fail();
                }
            }
        }
        props.push(cond.finish());
        props.push(recon.finish());
    }
    SuiteReport {
        suite: "rotor".into(),
        seed,
        count,
        rejections,
        properties: props,
    }
}

/// exp/log round trips, square roots and the series oracle.
pub fn roundtrip_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rng = seeded_rng(seed);
    let mut props = Vec::new();
    for (tag, sig) in featured_algebras() {
        let mut exp_vs_series = PropertyTracker::new(format!("{tag} exp matches series"), 1e-10);
        let mut exp_log = PropertyTracker::new(format!("{tag} exp(log R) = R"), 1e-8);
        let mut log_exp = PropertyTracker::new(format!("{tag} log(exp B) = B"), 1e-8);
        let mut sqrt_sq = PropertyTracker::new(format!("{tag} sqrt(R)^2 = R"), 1e-9);
        for _ in 0..count {
            // series comparison on bounded random bivectors
            let b = sample_bivector(&mut rng, sig, 2.0);
            match (exp_bivector(&b), exp_series(&b, 1e-13)) {
                (Ok(closed), Ok(series)) => {
                    exp_vs_series.record(closed.as_multivector().max_diff(series.as_multivector()));
                }
                _ => exp_vs_series.fail(),
            }

            // principal round trips
            let b = sample_principal_bivector(&mut rng, sig);
            let r = match exp_bivector(&b) {
                Ok(r) => r,
                Err(_) => {
                    exp_log.fail();
                    log_exp.fail();
                    sqrt_sq.fail();
                    continue;
                }
            };
            match log_rotor(&r) {
                Ok(back) => {
                    log_exp.record(back.max_diff(&b));
                    match exp_bivector(&back) {
                        Ok(r2) => exp_log.record(r2.as_multivector().max_diff(r.as_multivector())),
                        Err(_) => exp_log.fail(),
                    }
                }
                Err(_) => {
                    exp_log.fail();
                    log_exp.fail();
                }
            }
            match sqrt_rotor(&r) {
                Ok(root) => {
                    let sq = root.as_multivector().gp(root.as_multivector());
                    sqrt_sq.record(sq.max_diff(r.as_multivector()));
                }
                Err(_) => sqrt_sq.fail(),
            }
        }
        props.push(exp_vs_series.finish());
        props.push(exp_log.finish());
        props.push(log_exp.finish());
        props.push(sqrt_sq.finish());
    }

    // forced isoclinic cases in R_4 exercise the series fallback
    let sig = Signature::r4();
    let mut iso = PropertyTracker::new("r4 isoclinic exp matches series".to_string(), 1e-10);
    for _ in 0..count.min(200) {
        let t: f64 = rng.gen_range(0.05..1.5);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let base = &(Multivector::blade(sig, Blade(0b0011), t))
            + &Multivector::blade(sig, Blade(0b1100), sign * t);
        // conjugate by a random simple rotor to vary the planes
        let u = sample_vector(&mut rng, sig);
        let v = sample_vector(&mut rng, sig);
        let rot = u.gp(&v);
        let b = match normalize(&rot) {
            Ok(parts) => parts.rotor.sandwich(&base),
            Err(_) => base,
        };
        match (exp_bivector(&b), exp_series(&b, 1e-13)) {
            (Ok(closed), Ok(series)) => {
                iso.record(closed.as_multivector().max_diff(series.as_multivector()))
            }
            _ => iso.fail(),
        }
    }
    props.push(iso.finish());

    SuiteReport {
        suite: "roundtrip".into(),
        seed,
        count,
        rejections: 0,
        properties: props,
    }
}

/// Invariant decomposition: reconstruction, commutation, simple squares.
pub fn split_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rng = seeded_rng(seed);
    let mut props = Vec::new();
    for (tag, sig) in featured_algebras() {
        let mut sum = PropertyTracker::new(format!("{tag} b+ + b- = B"), 1e-14);
        let mut comm = PropertyTracker::new(format!("{tag} commutator(b+, b-) = 0"), 1e-10);
        let mut squares = PropertyTracker::new(format!("{tag} b_i^2 = lambda_i scalar"), 1e-10);
        let mut ordering = PropertyTracker::new(format!("{tag} lambda- <= lambda+"), 0.0);
        for _ in 0..count {
            let b = sample_bivector(&mut rng, sig, 2.0);
            let split = match invariant_split(&b) {
                Ok(s) => s,
                Err(_) => {
                    sum.fail();
                    comm.fail();
                    squares.fail();
                    ordering.fail();
                    continue;
                }
            };
            sum.record((&split.b_plus + &split.b_minus).max_diff(&b));
            comm.record(split.b_plus.commutator(&split.b_minus).coeff_inf_norm());
            let mut sq_res = 0.0f64;
            for (part, lambda) in [
                (&split.b_plus, split.lambda_plus),
                (&split.b_minus, split.lambda_minus),
            ] {
                if split.degenerate && part.coeff_l2_norm() == 0.0 {
                    continue;
                }
                let sq = part.gp(part);
                let target = if split.degenerate {
                    sq.scalar_part()
                } else {
                    lambda
                };
                sq_res = sq_res.max(
                    sq.max_diff(&Multivector::scalar(sig, target)),
                );
            }
            squares.record(sq_res);
            if split.lambda_minus <= split.lambda_plus {
                ordering.record(0.0);
            } else {
                ordering.fail();
            }
        }
        props.push(sum.finish());
        props.push(comm.finish());
        props.push(squares.finish());
        props.push(ordering.finish());
    }
    SuiteReport {
        suite: "split".into(),
        seed,
        count,
        rejections: 0,
        properties: props,
    }
}

/// The n = 4 remark: any even X in R_4 preserves orthogonality, scaling
/// inner products by the scalar (X reverse(X)) conj(X reverse(X)).
pub fn ortho4_suite(seed: u64, count: usize) -> SuiteReport {
    let sig = Signature::r4();
    let mut rng = seeded_rng(seed);
    let mut keeps_ortho = PropertyTracker::new("r4 orthogonal pairs stay orthogonal".to_string(), 1e-9);
    let mut scales = PropertyTracker::new("r4 u'.u' scales by |S^2|^2".to_string(), 1e-9);
    for _ in 0..count {
        let x = sample_even(&mut rng, sig);
        let u = sample_vector(&mut rng, sig);
        let w = sample_vector(&mut rng, sig);
        let uu = u.gp(&u).scalar_part();
        let v = &w - &(&u * (w.gp(&u).scalar_part() / uu));
        let vv = v.gp(&v).scalar_part();
        if vv.abs() < 1e-4 {
            // w was nearly parallel to u; skip the ill-conditioned pair
            continue;
        }

        let factor = match StudyNumber::from_multivector(&x.gp(&x.reverse()), crate::DEFAULT_TOL)
        {
            Ok(s2) => s2.norm_squared(),
            Err(_) => {
                keeps_ortho.fail();
                scales.fail();
                continue;
            }
        };
        let u_t = x.sandwich(&u);
        let v_t = x.sandwich(&v);
        let dot_t = u_t.gp(&v_t).scalar_part();
        let uu_t = u_t.gp(&u_t).scalar_part();
        let scale = factor.abs() * u.coeff_l2_norm() * v.coeff_l2_norm() + 1e-30;
        keeps_ortho.record(dot_t.abs() / scale);
        scales.record((uu_t - factor * uu).abs() / (factor.abs() * uu.abs() + 1e-30));
    }
    SuiteReport {
        suite: "ortho4".into(),
        seed,
        count,
        rejections: 0,
        properties: vec![keeps_ortho.finish(), scales.finish()],
    }
}

fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let scale = b.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
        / scale
}

/// Fast kernels against the generic engine: value equivalence on random
/// nonsingular inputs and singularity agreement on constructed ones.
pub fn kernel_suite(seed: u64, count: usize) -> SuiteReport {
    let mut rng = seeded_rng(seed);
    let mut rejections = 0usize;
    let mut props = Vec::new();

    for (tag, sig) in featured_algebras() {
        let mut equiv = PropertyTracker::new(format!("{tag} normalize kernel = generic"), 1e-12);
        for _ in 0..count {
            let x = sample_nonsingular_even(&mut rng, sig, &mut rejections);
            let generic = match normalize(&x) {
                Ok(parts) => parts.rotor.into_multivector(),
                Err(_) => {
                    equiv.fail();
                    continue;
                }
            };
            let res = match tag {
                AlgebraTag::R4 => {
                    let packed = EVEN_4D.pack(&x).unwrap();
                    kernels::r4::normalize(&packed)
                        .map(|out| rel_diff(&out, &EVEN_4D.pack(&generic).unwrap()))
                }
                AlgebraTag::R31 => {
                    let packed = EVEN_4D.pack(&x).unwrap();
                    kernels::r31::normalize(&packed)
                        .map(|out| rel_diff(&out, &EVEN_4D.pack(&generic).unwrap()))
                }
                AlgebraTag::R301 => {
                    let packed = EVEN_R301.pack(&x).unwrap();
                    kernels::r301::normalize(&packed)
                        .map(|out| rel_diff(&out, &EVEN_R301.pack(&generic).unwrap()))
                }
                AlgebraTag::R41 => {
                    let packed = EVEN_R41.pack(&x).unwrap();
                    kernels::r41::normalize(&packed)
                        .map(|out| rel_diff(&out, &EVEN_R41.pack(&generic).unwrap()))
                }
                _ => unreachable!("featured algebras only"),
            };
            match res {
                Ok(d) => equiv.record(d),
                Err(_) => equiv.fail(),
            }
        }
        props.push(equiv.finish());
    }

    // r301 log and exp kernels against the generic maps
    let sig = Signature::r301();
    let mut log_equiv = PropertyTracker::new("r301 log kernel = generic".to_string(), 1e-12);
    let mut exp_equiv = PropertyTracker::new("r301 exp kernel = generic".to_string(), 1e-12);
    for _ in 0..count {
        let b = sample_principal_bivector(&mut rng, sig);
        if let Ok(r) = exp_bivector(&b) {
            let packed = EVEN_R301.pack(r.as_multivector()).unwrap();
            match (kernels::r301::log(&packed), log_rotor(&r)) {
                (Ok(kb), Ok(gb)) =>

                    log_equiv.record(rel_diff(&kb, &kernels::BIVECTOR_R301.pack(&gb).unwrap())),
                _ => log_equiv.fail(),
            }
        } else {
            log_equiv.fail();
        }

        let b = sample_bivector(&mut rng, sig, 2.0);
        let packed = kernels::BIVECTOR_R301.pack(&b).unwrap();
        let kr = kernels::r301::exp(&packed);
        match exp_bivector(&b) {
            Ok(gr) => exp_equiv.record(rel_diff(
                &kr,
                &EVEN_R301.pack(gr.as_multivector()).unwrap(),
            )),
            Err(_) => exp_equiv.fail(),
        }
    }
    props.push(log_equiv.finish());
    props.push(exp_equiv.finish());

    // singularity agreement on constructed singular inputs
    let mut agree = PropertyTracker::new("singular verdicts agree".to_string(), 0.0);
    let singular_cases: Vec<(AlgebraTag, Multivector)> = vec![
        (
            AlgebraTag::R301,
            Multivector::blade(Signature::r301(), Blade(0b0011), 0.8),
        ),
        (AlgebraTag::R4, {
            let s = Signature::r4();
            &Multivector::scalar(s, 1.0) + &Multivector::blade(s, Blade(0b1111), 1.0)
        }),
        (AlgebraTag::R31, {
            // e12 + e24 has X reverse(X) = 0 exactly
            let s = Signature::r31();
            &Multivector::blade(s, Blade(0b0011), 1.0) + &Multivector::blade(s, Blade(0b1010), 1.0)
        }),
        (AlgebraTag::R41, {
            // e15 + e25 squares to +2, so X reverse(X) = -2: off the real branch
            let s = Signature::r41();
            &Multivector::blade(s, Blade(0b10001), 1.0)
                + &Multivector::blade(s, Blade(0b10010), 1.0)
        }),
    ];
    for (tag, x) in &singular_cases {
        let generic_err = normalize(x).is_err();
        let kernel_err = match tag {
            AlgebraTag::R4 => kernels::r4::normalize(&EVEN_4D.pack(x).unwrap()).is_err(),
            AlgebraTag::R31 => kernels::r31::normalize(&EVEN_4D.pack(x).unwrap()).is_err(),
            AlgebraTag::R301 => kernels::r301::normalize(&EVEN_R301.pack(x).unwrap()).is_err(),
            AlgebraTag::R41 => kernels::r41::normalize(&EVEN_R41.pack(x).unwrap()).is_err(),
            _ => unreachable!(),
        };
        if generic_err && kernel_err {
            agree.record(0.0);
        } else {
            agree.fail();
        }
    }
    props.push(agree.finish());

    SuiteReport {
        suite: "kernels".into(),
        seed,
        count,
        rejections,
        properties: props,
    }
}

/// Dispatch by suite name; `None` for an unknown name.
pub fn run_suite(name: &str, seed: u64, count: usize) -> Option<SuiteReport> {
    match name {
        "rotor" => Some(rotor_suite(seed, count)),
        "roundtrip" => Some(roundtrip_suite(seed, count)),
        "split" => Some(split_suite(seed, count)),
        "ortho4" => Some(ortho4_suite(seed, count)),
        "kernels" => Some(kernel_suite(seed, count)),
        _ => None,
    }
}
