mod support;

use std::time::{Duration, Instant};

use jetmove::automorphisms::{AutWord, Generator, TorusFactor, TorusTwist};
use jetmove::dantesque::{
    descriptor_invariants, descriptor_normalize, forest_build, isomorphism_decide, BaseSurface, BlowupRecord,
    ResolutionClass, SurfaceDescriptor, Verdict,
};
use jetmove::exactalg::{
    crt_combine, hensel_sqrt, rat, sturm_root_count, Rational, RootRange, Series,
};
use jetmove::surfaces::{standard_jet, Jet, Point, SpherePoint, SurfaceKind};
use jetmove::transitivity::{solve_rotation_parameter, sphere_lambda_twist, synth, synth_pair, SynthOptions};
use jetmove::Scalar;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;

use support::*;

fn report(n: usize, name: &str, start: Instant, budget: u64, mut failures: Vec<String>) -> bool {
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(budget) {
        failures.push(format!("took {:.2}s, budget {budget}s", elapsed.as_secs_f64()));
    }
    let ok = failures.is_empty();
    println!(
        "criterion {n} [{}] {name} ({:.2}s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    for f in failures.iter().take(5) {
        println!("    {f}");
    }
    ok
}

fn coeffs_of(p: &P) -> Vec<Rational> {
    p.coeffs().to_vec()
}

fn round_trip() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let opts = SynthOptions::default();
    for (k, surface) in [SurfaceKind::Torus, SurfaceKind::Sphere].into_iter().enumerate() {
        let mut rng = rng(100 + k as u64);
        for case in 0..200 {
            let orders = partition(&mut rng, 4, 6);
            let targets: Vec<Jet<Scalar>> = distant_jets(&mut rng, surface, &orders);
            let w = match synth(surface, &targets, &opts) {
                Ok(w) => w,
                Err(e) => {
                    failures.push(format!("{surface} case {case}: {e}"));
                    continue;
                }
            };
            for (i, (t, &e)) in targets.iter().zip(&orders).enumerate() {
                let source = standard_jet::<Scalar>(surface, i + 1, e);
                match w.apply_jet(&source) {
                    Ok(image) if &image == t => {}
                    other => failures.push(format!("{surface} case {case} jet {i}: {other:?}")),
                }
            }
        }
    }
    report(1, "round-trip synthesis", start, 60, failures)
}

/// Random point `((1 − t²)/(1 + t²), 2t/(1 + t²), 0)` of the equator.
fn equator_point(rng: &mut StdRng) -> SpherePoint<Rational> {
    SpherePoint::equator(&rational(rng, 9))
}

fn formula_fidelity() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    // variables (λ, z)
    let lam = MPoly::var(2, 0);
    let z = MPoly::var(2, 1);
    let one = MPoly::constant(2, q(1));
    let one_z2 = one.add(&z.mul(&z));
    let lz = lam.mul(&z);
    let p = one_z2.mul(&one_z2).sub(&lz.mul(&lz));
    let qq = one_z2.mul(&lz).scale(&q(2));
    let r = one_z2.mul(&one_z2).add(&lz.mul(&lz));
    let defect = p.mul(&p).add(&qq.mul(&qq)).sub(&r.mul(&r));
    if !defect.is_zero() {
        failures.push(format!("p² + q² − r² = {defect:?}"));
    }

    let mut rng = rng(200);
    for case in 0..10 {
        // torus: x ↦ x + p(y)/q(y) with p(0) = 0, q(0) = 1, q'(0) = 0
        let x0 = rational(&mut rng, 9);
        let m = random_poly(&mut rng, 1, 5);
        let s = &P::x() * &m;
        let qt = &P::one() + &(&s * &s);
        let mut pc = coeffs_of(&random_poly(&mut rng, 4, 5));
        pc[0] = q(0);
        let pt = P::new(pc);
        let slope = pt.coeff(1);
        let twist = TorusTwist::new(TorusFactor::X, pt, qt).expect("1 + s² has no real roots");
        let w = AutWord::single(Generator::TorusTwist(twist));
        let expect = vec![vec![q(1), slope], vec![q(0), q(1)]];
        match w.jacobian_at(&Point::torus(x0.clone(), q(0))) {
            Ok(j) if j == expect => {}
            other => failures.push(format!("torus case {case} at x = {x0}: {other:?}")),
        }

        // sphere: the λ-family at an equator point
        let lambda = nonzero_rational(&mut rng, 9);
        let c = equator_point(&mut rng);
        let twist = sphere_lambda_twist(&lambda).expect("the λ-family certifies");
        let q1 = twist.q().coeff(1);
        if q1 != &lambda * q(2) {
            failures.push(format!("q'(0) = {q1} for λ = {lambda}"));
        }
        let (x, y) = (c.x().clone(), c.y().clone());
        let expect = vec![
            vec![q(1), q(0), -(&y * &q1)],
            vec![q(0), q(1), &x * &q1],
            vec![q(0), q(0), q(1)],
        ];
        let w = AutWord::single(Generator::SphereTwist(twist));
        match w.jacobian_at(&Point::Sphere(c)) {
            Ok(j) if j == expect => {}
            other => failures.push(format!("sphere case {case}, λ = {lambda}: {other:?}")),
        }
    }
    report(2, "twist formulas and Jacobians", start, 5, failures)
}

/// Truncated product of coefficient vectors.
fn conv(a: &[Rational], b: &[Rational], e: usize) -> Vec<Rational> {
    let mut out = vec![q(0); e];
    for (i, x) in a.iter().enumerate().take(e) {
        for (j, y) in b.iter().enumerate().take(e - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn padded(s: &Series<Rational>, e: usize) -> Vec<Rational> {
    (0..e).map(|k| s.coeff(k).clone()).collect()
}

/// Solves `2af = (1 + a²)h` one coefficient at a time: with `a₀ = 0` the
/// coefficient of `t^k` is linear in `a_k` with factor `2f₀`. Returns `None`
/// if the solution fails the other equation `(1 − a²)f = (1 + a²)g`.
fn rotation_oracle(f: &[Rational], g: &[Rational], h: &[Rational]) -> Option<Vec<Rational>> {
    let e = f.len();
    let mut a = vec![q(0); e];
    for k in 1..e {
        let a2 = conv(&a, &a, e);
        let a2h = conv(&a2, h, e);
        let af = conv(&a, f, e);
        // coefficient k of 2af − h − a²h, without the a_k term
        let rest = af[k].clone() * q(2) - &h[k] - &a2h[k];
        a[k] = -rest / (f[0].clone() * q(2));
    }
    let a2 = conv(&a, &a, e);
    let mut one_minus = a2.iter().map(|c| -c.clone()).collect::<Vec<_>>();
    one_minus[0] += q(1);
    let mut one_plus = a2.clone();
    one_plus[0] += q(1);
    let first = conv(&one_minus, f, e) == conv(&one_plus, g, e);
    let second = conv(&a, f, e).iter().map(|c| c * q(2)).collect::<Vec<_>>() == conv(&one_plus, h, e);
    (first && second).then_some(a)
}

fn rotation_parameters() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = rng(300);
    for case in 0..100 {
        let e = 1 + case % 4;
        let c = equator_point(&mut rng);
        let (x0, y0) = (c.x().clone(), c.y().clone());
        if y0.is_zero() {
            continue;
        }
        let one_minus = Series::from_poly(&P::new(vec![q(1), q(0), q(-1)]), x0.clone(), e);
        let f = hensel_sqrt(&one_minus, &y0).unwrap();
        let d = rng.gen_range(1..=3);
        let mut hc = vec![q(0); e];
        if rng.gen_range(0..5) > 0 {
            for k in d.min(e)..e {
                hc[k] = rational(&mut rng, 4);
            }
        }
        let h = Series::with_order(x0.clone(), hc, e);
        let g = hensel_sqrt(&(&one_minus - &(&h * &h)), &y0).unwrap();
        let (fv, gv, hv) = (padded(&f, e), padded(&g, e), padded(&h, e));
        // the hypotheses, checked on coefficients: x² + f² = 1 and x² + g² + h² = 1
        let mut lhs = vec![q(0); e];
        lhs[0] = &x0 * &x0;
        if e > 1 {
            lhs[1] = &x0 * q(2);
        }
        if e > 2 {
            lhs[2] = q(1);
        }
        let add = |a: &[Rational], b: &[Rational]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
        let mut unit = vec![q(0); e];
        unit[0] = q(1);
        if add(&lhs, &conv(&fv, &fv, e)) != unit || add(&add(&lhs, &conv(&gv, &gv, e)), &conv(&hv, &hv, e)) != unit {
            failures.push(format!("case {case}: invalid random input"));
            continue;
        }
        let Some(expect) = rotation_oracle(&fv, &gv, &hv) else {
            failures.push(format!("case {case}: oracle found no solution"));
            continue;
        };
        match solve_rotation_parameter(&f, &g, &h) {
            Ok(a) if padded(&a, e) == expect && a.order() == e && a.center() == &x0 => {}
            other => failures.push(format!("case {case} (e = {e}): {other:?} vs {expect:?}")),
        }
    }
    report(3, "rotation parameter vs undetermined coefficients", start, 30, failures)
}

fn sphere_identity() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = rng(400);
    for case in 0..100 {
        let t = random_sphere_twist(&mut rng);
        // variables (s, y, z): s the fixed coordinate
        let lift = |p: &P| MPoly::univariate(3, 0, p.coeffs());
        let (p, qq, r) = (lift(t.p()), lift(t.q()), lift(t.r()));
        let (y, z) = (MPoly::var(3, 1), MPoly::var(3, 2));
        let a = y.mul(&p).sub(&z.mul(&qq));
        let b = y.mul(&qq).add(&z.mul(&p));
        let lhs = a.mul(&a).add(&b.mul(&b));
        let rhs = y.mul(&y).add(&z.mul(&z)).mul(&r.mul(&r));
        if lhs != rhs {
            failures.push(format!("case {case}: identity fails for {t:?}"));
        }
        if t.preservation_defect().iter().any(|d| !d.is_zero()) {
            failures.push(format!("case {case}: library defect nonzero"));
        }
    }
    report(4, "sphere preservation identity", start, 5, failures)
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(q(0), |acc, c| acc * x + c)
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let k = r.len() - b.len();
        let f = r.last().unwrap().clone() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &f * c;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn quot(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap().clone();
    let mut out = vec![q(0); a.len() + 1 - b.len()];
    while r.len() >= b.len() {
        let k = r.len() - b.len();
        let f = r.last().unwrap().clone() / &lead;
        for (i, c) in b.iter().enumerate() {
            r[k + i] -= &f * c;
        }
        out[k] = f;
        r.pop();
        r = trim(r);
    }
    out
}

fn square_free(p: &[Rational]) -> Vec<Rational> {
    let d: Vec<Rational> = trim(p.iter().enumerate().skip(1).map(|(i, c)| c * q(i as i64)).collect());
    if d.is_empty() {
        return p.to_vec();
    }
    let (mut a, mut b) = (p.to_vec(), d);
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    quot(p, &a)
}

/// Integer polynomial product.
fn iconv(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Coefficients of `(d + d·y)^n p((lo + hi·y)/(1 + y))` for integer `p`
/// and `lo = l/d`, `hi = h/d`: a positive multiple of the Möbius image.
fn mobius_image(p: &[BigInt], l: &BigInt, h: &BigInt, d: &BigInt) -> Vec<BigInt> {
    let n = p.len() - 1;
    let mut out = vec![BigInt::zero(); n + 1];
    let lin = [l.clone(), h.clone()];
    let den = [d.clone(), d.clone()];
    for (k, c) in p.iter().enumerate() {
        let mut term = vec![c.clone()];
        for _ in 0..k {
            term = iconv(&term, &lin);
        }
        for _ in k..n {
            term = iconv(&term, &den);
        }
        for (i, t) in term.into_iter().enumerate() {
            out[i] += t;
        }
    }
    out
}

fn sign_variations(cs: &[BigInt]) -> usize {
    let signs: Vec<bool> = cs.iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Roots of the square-free integer `p` in the open interval `(l/d, h/d)`,
/// by bisection until the Descartes bound is 0 or 1.
fn roots_open(p: &[BigInt], l: &BigInt, h: &BigInt, d: &BigInt) -> usize {
    match sign_variations(&mobius_image(p, l, h, d)) {
        0 => 0,
        1 => 1,
        _ => {
            let (l2, h2, d2) = (l * 2, h * 2, d * 2);
            let mid = l + h;
            let at_mid = usize::from(eval_int(p, &mid, &d2).is_zero());
            roots_open(p, &l2, &mid, &d2) + at_mid + roots_open(p, &mid, &h2, &d2)
        }
    }
}

/// Sign-exact value of `p(x/d)·d^n`.
fn eval_int(p: &[BigInt], x: &BigInt, d: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for c in p.iter().rev() {
        acc = acc * x + c * &dpow;
        dpow *= d;
    }
    acc
}

/// Clears denominators.
fn integral(p: &[Rational]) -> Vec<BigInt> {
    let l = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    p.iter().map(|c| c.numer() * (&l / c.denom())).collect()
}

/// Numerator of `x` over the denominator `d`, a multiple of its own.
fn over(x: &Rational, d: &BigInt) -> BigInt {
    x.numer() * (d / x.denom())
}

fn bisection_count(p: &[Rational], interval: Option<(Rational, Rational)>) -> usize {
    let sf = square_free(p);
    if sf.len() <= 1 {
        return 0;
    }
    let ip = integral(&sf);
    let (lo, hi) = match interval {
        Some(range) => range,
        None => {
            let lead = sf.last().unwrap();
            let bound = sf.iter().map(|c| Signed::abs(&(c / lead))).fold(q(0), |m, c| if c > m { c } else { m }) + q(1);
            (-bound.clone(), bound)
        }
    };
    let d = lo.denom().lcm(hi.denom());
    let inside = roots_open(&ip, &over(&lo, &d), &over(&hi, &d), &d);
    let ends = usize::from(eval(&sf, &lo).is_zero()) + usize::from(eval(&sf, &hi).is_zero());
    inside + ends
}

/// Products of linear factors (roots often at ±1 or repeated), quadratics
/// and dense random polynomials, all of degree ≤ 8.
fn root_rich_poly(rng: &mut StdRng) -> P {
    match rng.gen_range(0..3) {
        0 => {
            let deg = rng.gen_range(0..=8);
            random_poly(rng, deg, 9)
        }
        _ => {
            let mut p = P::constant(nonzero_rational(rng, 5));
            let mut deg = 0;
            let target = rng.gen_range(1..=8);
            while deg < target {
                let factor = if deg + 2 <= target && rng.gen_bool(0.3) {
                    deg += 2;
                    let (a, b) = (rational(rng, 3), rational(rng, 3));
                    P::new(vec![b, a, q(1)])
                } else {
                    deg += 1;
                    let root = match rng.gen_range(0..4) {
                        0 => q(if rng.gen_bool(0.5) { 1 } else { -1 }),
                        _ => rational(rng, 4),
                    };
                    P::linear_root(&root)
                };
                p = &p * &factor;
            }
            p
        }
    }
}

fn sturm_oracle() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = rng(500);
    for case in 0..500 {
        let p = root_rich_poly(&mut rng);
        let cs = coeffs_of(&p);
        for (range, interval) in [
            (RootRange::WholeLine, None),
            (RootRange::unit_interval(), Some((q(-1), q(1)))),
        ] {
            let expect = bisection_count(&cs, interval);
            match sturm_root_count(&p, &range) {
                Ok(n) if n == expect => {}
                other => failures.push(format!("case {case} {p:?} {range:?}: {other:?} vs {expect}")),
            }
        }
    }
    report(5, "Sturm counts vs bisection", start, 10, failures)
}

/// Coefficients of `p(c + t)` by repeated synthetic division.
fn shift(p: &[Rational], c: &Rational) -> Vec<Rational> {
    let mut rest = p.to_vec();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let n = rest.len();
        let mut quotient = vec![q(0); n - 1];
        let mut acc = q(0);
        for k in (0..n).rev() {
            acc = acc * c + &rest[k];
            if k > 0 {
                quotient[k - 1] = acc.clone();
            }
        }
        out.push(acc);
        rest = quotient;
    }
    out
}

fn crt_hensel() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let check = |failures: &mut Vec<String>, name: &str, ok: bool| {
        if !ok {
            failures.push(format!("example {name}"));
        }
    };
    let crt = crt_combine(&[
        Series::new(q(0), vec![q(1), q(0)]),
        Series::new(q(1), vec![q(2), q(0)]),
    ]);
    check(&mut failures, "crt 1 + 3x² − 2x³", crt == Ok(P::from_ints(&[1, 0, 3, -2])));
    let crt0 = crt_combine(&[Series::new(q(0), vec![q(0), q(0)]), Series::new(q(1), vec![q(0), q(0)])]);
    check(&mut failures, "crt zero", crt0 == Ok(P::zero()));
    check(&mut failures, "crt single", crt_combine(&[Series::new(q(0), vec![q(5)])]) == Ok(P::constant(q(5))));
    let u = Series::from_poly(&P::from_ints(&[1, 0, -1]), rat(3, 5), 2);
    check(
        &mut failures,
        "hensel √(1 − x²) at 3/5",
        hensel_sqrt(&u, &rat(4, 5)) == Ok(Series::new(rat(3, 5), vec![rat(4, 5), rat(-3, 4)])),
    );
    let u = Series::new(q(0), vec![q(1), q(1), q(0)]);
    check(
        &mut failures,
        "hensel √(1 + x)",
        hensel_sqrt(&u, &q(1)) == Ok(Series::new(q(0), vec![q(1), rat(1, 2), rat(-1, 8)])),
    );
    check(
        &mut failures,
        "hensel √1",
        hensel_sqrt(&Series::one(q(0), 4), &q(1)) == Ok(Series::one(q(0), 4)),
    );

    let mut rng = rng(600);
    for case in 0..200 {
        let n = rng.gen_range(1..=4);
        let mut residues: Vec<Series<Rational>> = Vec::new();
        while residues.len() < n {
            let c = rational(&mut rng, 6);
            if residues.iter().any(|r| r.center() == &c) {
                continue;
            }
            let e = rng.gen_range(1..=4);
            let cs = (0..e).map(|_| rational(&mut rng, 7)).collect();
            residues.push(Series::with_order(c, cs, e));
        }
        let total: usize = residues.iter().map(Series::order).sum();
        let p = match crt_combine(&residues) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("case {case}: {e}"));
                continue;
            }
        };
        if p.degree().is_some_and(|d| d >= total) {
            failures.push(format!("case {case}: degree {:?} ≥ {total}", p.degree()));
        }
        for r in &residues {
            let taylor = shift(p.coeffs(), r.center());
            let got: Vec<Rational> = (0..r.order()).map(|k| taylor.get(k).cloned().unwrap_or_else(|| q(0))).collect();
            if got != padded(r, r.order()) {
                failures.push(format!("case {case}: residue at {} not met", r.center()));
            }
        }
        let e = rng.gen_range(1..=5);
        let c = rational(&mut rng, 5);
        let seed = nonzero_rational(&mut rng, 5);
        let mut cs: Vec<Rational> = (0..e).map(|_| rational(&mut rng, 5)).collect();
        cs[0] = &seed * &seed;
        let u = Series::with_order(c, cs.clone(), e);
        match hensel_sqrt(&u, &seed) {
            Ok(s) if conv(&padded(&s, e), &padded(&s, e), e) == cs && s.coeff(0) == &seed => {}
            other => failures.push(format!("case {case}: hensel {other:?}")),
        }
    }
    report(6, "CRT and Hensel", start, 10, failures)
}

fn group_laws() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = rng(700);
    for case in 0..100 {
        let surface = if case % 2 == 0 { SurfaceKind::Torus } else { SurfaceKind::Sphere };
        let w = random_word(&mut rng, surface);
        let round = w.then(&w.inverse()).unwrap();
        for _ in 0..3 {
            let p = random_point(&mut rng, surface);
            match round.apply_point(&p) {
                Ok(image) if image == p => {}
                other => failures.push(format!("case {case}: w⁻¹∘w moved {p:?} to {other:?}")),
            }
        }
        let w2 = random_word(&mut rng, surface);
        let e = rng.gen_range(1..=3);
        let j: Jet<Rational> = distant_jets(&mut rng, surface, &[e]).pop().unwrap();
        let composed = w.then(&w2).unwrap().apply_jet(&j);
        let stepwise = w.apply_jet(&j).and_then(|k| w2.apply_jet(&k));
        match (composed, stepwise) {
            (Ok(a), Ok(b)) if a == b && a.order() == e => {}
            other => failures.push(format!("case {case}: functoriality {other:?}")),
        }
    }
    report(7, "group laws", start, 20, failures)
}

/// Euler characteristic of a union of curves from inclusion–exclusion over
/// all subsets; `meet(i, j)` tells whether two curves cross (in one point).
fn union_euler(n: usize, meet: impl Fn(usize, usize) -> bool) -> i64 {
    let mut chi = 0;
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        let inter = match members.len() {
            // a real exceptional curve is a circle
            1 => 0,
            2 => i64::from(meet(members[0], members[1])),
            _ => 0,
        };
        chi += if members.len() % 2 == 1 { inter } else { -inter };
    }
    chi
}

/// Euler characteristic and resolution genus from the blow-up picture: each
/// record replaces a point by a chain `E₁, …, E_e` of circles, and the
/// subchain `E₁, …, E_{e−1}` is contracted to the singular point.
fn euler_oracle(d: &SurfaceDescriptor<Rational>) -> (i64, i64) {
    let mut resolved = d.base.euler();
    let mut singular = d.base.euler();
    for r in &d.records {
        let e = r.order;
        let chain = union_euler(e, |i, j| i.abs_diff(j) == 1);
        resolved += chain - 1;
        let contracted = union_euler(e - 1, |i, j| i.abs_diff(j) == 1);
        singular += chain - 1 - if e >= 2 { contracted - 1 } else { 0 };
    }
    (singular, resolved)
}

fn random_descriptor(rng: &mut StdRng) -> SurfaceDescriptor<Rational> {
    let base = [BaseSurface::Sphere, BaseSurface::Torus, BaseSurface::Klein][rng.gen_range(0..3)];
    let n = rng.gen_range(0..=6);
    let records = (0..n)
        .map(|i| {
            let e = rng.gen_range(1..=5);
            if i > 0 && rng.gen_bool(0.4) {
                BlowupRecord::on_record(rng.gen_range(0..i), e)
            } else {
                BlowupRecord::on_base(e)
            }
        })
        .collect();
    SurfaceDescriptor::new(base, records).unwrap()
}

fn classifier() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let flat = |b, orders: &[usize]| SurfaceDescriptor::<Rational>::flat(b, orders);
    let mut rng = rng(800);
    for e in 1..=5 {
        for base in [BaseSurface::Sphere, BaseSurface::Torus, BaseSurface::Klein] {
            let d = flat(base, &[e]);
            let inv = descriptor_invariants(&d);
            let (chi, chi_res) = euler_oracle(&d);
            if inv.euler != chi || inv.euler != base.euler() - 1 {
                failures.push(format!("{base} e = {e}: euler {} vs oracle {chi}", inv.euler));
            }
            if inv.resolution != (ResolutionClass::Nonorientable { genus: (2 - chi_res) as usize }) {
                failures.push(format!("{base} e = {e}: {:?} vs oracle χ {chi_res}", inv.resolution));
            }
        }
    }
    let s = |orders: &[usize]| flat(BaseSurface::Sphere, orders);
    let tagged = [
        (s(&[1, 1, 1]), s(&[1, 1, 1]), Verdict::Isomorphic),
        (s(&[1, 1, 1]), flat(BaseSurface::Torus, &[1]), Verdict::Isomorphic),
        (s(&[2]), s(&[1, 1]), Verdict::NotIsomorphic),
        (s(&[2, 2]), s(&[2, 2]), Verdict::HypothesisNotMet),
    ];
    for (a, b, v) in &tagged {
        if isomorphism_decide(a, b) != *v {
            failures.push(format!("{:?} vs {:?}: expected {v}", a.orders(), b.orders()));
        }
    }
    for case in 0..100 {
        let d = random_descriptor(&mut rng);
        let inv = descriptor_invariants(&d);
        let (chi, chi_res) = euler_oracle(&d);
        if inv.euler != chi {
            failures.push(format!("case {case}: euler {} vs oracle {chi}", inv.euler));
        }
        if !d.records.is_empty() && inv.resolution != (ResolutionClass::Nonorientable { genus: (2 - chi_res) as usize }) {
            failures.push(format!("case {case}: resolution {:?} vs oracle χ {chi_res}", inv.resolution));
        }
        let n = descriptor_normalize(&d);
        if descriptor_invariants(&n) != inv {
            failures.push(format!("case {case}: normalize changed the invariants"));
        }
        if descriptor_normalize(&n) != n {
            failures.push(format!("case {case}: normalize not idempotent"));
        }
        if forest_build(&n).map(|f| f.edges()) != Ok(0) || n.base == BaseSurface::Klein {
            failures.push(format!("case {case}: normal form not flat"));
        }
    }
    report(8, "classifier soundness", start, 5, failures)
}

fn pinned_synthesis() -> bool {
    let start = Instant::now();
    let mut failures = Vec::new();
    let opts = SynthOptions::default();
    let mut rng = rng(900);
    for case in 0..50 {
        let surface = if case % 2 == 0 { SurfaceKind::Torus } else { SurfaceKind::Sphere };
        let k = rng.gen_range(1..=2);
        let orders = partition(&mut rng, 4, 6);
        if orders.len() <= 1 {
            continue;
        }
        let k = k.min(orders.len() - 1);
        let (pin_orders, move_orders) = orders.split_at(k);
        let first: Vec<Jet<Scalar>> = distant_jets(&mut rng, surface, &orders);
        let (pinned, from) = first.split_at(k);
        let to = loop {
            let to: Vec<Jet<Scalar>> = distant_jets(&mut rng, surface, move_orders);
            if to.iter().all(|t| pinned.iter().all(|p| p.center() != t.center())) {
                break to;
            }
        };
        let w = match synth_pair(surface, from, &to, pinned, &opts) {
            Ok(w) => w,
            Err(e) => {
                failures.push(format!("case {case}: {e}"));
                continue;
            }
        };
        for p in pinned {
            if w.apply_jet(p).as_ref() != Ok(p) {
                failures.push(format!("case {case}: pinned jet moved (orders {pin_orders:?})"));
            }
        }
        for (a, b) in from.iter().zip(&to) {
            if w.apply_jet(a).as_ref() != Ok(b) {
                failures.push(format!("case {case}: moving jet missed"));
            }
        }
    }
    report(9, "pinned synthesis", start, 30, failures)
}

#[test]
fn acceptance() {
    let results = [
        round_trip(),
        formula_fidelity(),
        rotation_parameters(),
        sphere_identity(),
        sturm_oracle(),
        crt_hensel(),
        group_laws(),
        classifier(),
        pinned_synthesis(),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("{passed}/{} criteria passed", results.len());
    assert!(results.iter().all(|&ok| ok));
}
