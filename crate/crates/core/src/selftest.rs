//! Randomized property checks over exact rationals.
//!
//! Each check takes a seeded generator and a sample count and returns a
//! one-line summary, or the first counterexample it finds.

use std::fmt::Write as _;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cdga::{
    ext_class_rep, heisenberg, is_exact, mc_check, surface, surface_mc_data, surface_quadric, surface_rep_bridge,
    trivial_rank2, FormField, McData,
};
use crate::charvar::{classify_b4, normalize_orbit, z2_action};
use crate::fpgroup::{ModuleAction, Presentation};
use crate::io;
use crate::jetcore::linalg::{in_span, same_span, sub_vec};
use crate::jetcore::{JetDiffeo, JetMap, MultiIndex, Rational, Scalar};
use crate::jetgroup::{
    alpha_cocycle, chart_g2l, chart_g31, dilation_conjugate, dilation_homotopy, e41_closed_form, exp_jet, log_jet,
    LevyCoords, PolyVector,
};
use crate::obstruction::{
    cochain_delta_eval, enumerate_lifts, layer_act, lift_obstruction, relator_defects, twisted_h1, Representation,
};
use crate::random;

type Q = Rational;
type J = JetDiffeo<Q>;
pub type CheckResult = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        {
            let holds: bool = $cond;
            if !holds {
                return Err(format!($($msg)+));
            }
        }
    };
}

fn ok<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn q(n: i64) -> Q {
    Q::from_i64(n)
}

/// Associativity, two-sided inverses and truncation as a homomorphism in
/// every `G_{k,l}` with `l ≤ 3`, `k ≤ 5`.
pub fn group_axioms(rng: &mut ChaCha8Rng, n: usize) -> CheckResult {
    let mut count = 0;
    for l in 1..=3 {
        for k in 1..=5 {
            let density = if l == 3 { 0.25 } else { 0.5 };
            for _ in 0..n {
                let f: J = random::jet_diffeo(rng, l, k, density);
                let g: J = random::jet_diffeo(rng, l, k, density);
                let h: J = random::jet_diffeo(rng, l, k, density);
                let fg = ok(f.compose(&g))?;
                let lhs = ok(fg.compose(&h))?;
                let rhs = ok(f.compose(&ok(g.compose(&h))?))?;
                ensure!(lhs == rhs, "associativity fails for l={l} k={k}: {f:?} {g:?} {h:?}");
                let inv = ok(f.invert())?;
                ensure!(ok(f.compose(&inv))?.is_identity(), "right inverse fails for {f:?}");
                ensure!(ok(inv.compose(&f))?.is_identity(), "left inverse fails for {f:?}");
                for j in 1..k {
                    let a = ok(fg.truncate(j))?;
                    let b = ok(ok(f.truncate(j))?.compose(&ok(g.truncate(j))?))?;
                    ensure!(a == b, "truncation to {j} is not multiplicative for l={l} k={k}");
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} triples over 15 groups"))
}

/// Derived charts reproduce the closed-form product laws.
pub fn chart_laws(rng: &mut ChaCha8Rng, n: usize) -> CheckResult {
    for _ in 0..n {
        let (a, b) = (random::g31::<Q>(rng), random::g31::<Q>(rng));
        let prod = ok(ok(a.to_jet())?.compose(&ok(b.to_jet())?))?;
        ensure!(ok(chart_g31(&prod))? == a.mul(&b), "G31 law fails on {a:?} {b:?}");
        let l = rng.gen_range(1..=3);
        let (a, b) = (random::g2l::<Q>(rng, l), random::g2l::<Q>(rng, l));
        let prod = ok(ok(a.to_jet())?.compose(&ok(b.to_jet())?))?;
        ensure!(ok(chart_g2l(&prod))? == ok(a.mul(&b))?, "G2l law fails on {a:?} {b:?}");
    }
    Ok(format!("{n} pairs per chart"))
}

/// `exp` and `log` are inverse; `exp` is additive where the layers commute.
pub fn exp_log(rng: &mut ChaCha8Rng, n: usize) -> CheckResult {
    for _ in 0..n {
        let l = rng.gen_range(1..=2);
        let k = rng.gen_range(2..=5);
        let x: PolyVector<Q> = random::poly_vector(rng, l, 2, k, 0.5);
        let u = ok(exp_jet(&x, k))?;
        ensure!(ok(log_jet(&u))? == x, "log(exp(X)) != X for {x:?}");
        let pert: JetMap<Q> = ok(random::poly_vector(rng, l, 2, k, 0.5).to_jet_perturbation(k))?;
        let v = ok(JetDiffeo::new(pert))?;
        ensure!(ok(exp_jet(&ok(log_jet(&v))?, k))? == v, "exp(log(u)) != u for {v:?}");
        // The unipotent part is trivial at k = 1.
        let k = rng.gen_range(2..=3);
        let (x, y): (PolyVector<Q>, PolyVector<Q>) =
            (random::poly_vector(rng, 1, 2, 3, 0.7), random::poly_vector(rng, 1, 2, 3, 0.7));
        let (x, y) = (ok(x.rebound(2, k))?, ok(y.rebound(2, k))?);
        let sum = ok(exp_jet(&ok(x.add(&y))?, k))?;
        let prod = ok(ok(exp_jet(&x, k))?.compose(&ok(exp_jet(&y, k))?))?;
        ensure!(sum == prod, "exp not additive at k={k}");
    }
    Ok(format!("{n} samples"))
}

/// `δα = 0` on `G_{3,1}` and `α` matches its closed form.
pub fn cocycle(rng: &mut ChaCha8Rng, n: usize) -> CheckResult {
    let alpha = |a: &J, b: &J| Ok(alpha_cocycle(a, b)?.layer_vector(4));
    let mul = |a: &J, b: &J| a.compose(b);
    let t4 = MultiIndex::new(vec![4]).expect("one variable");
    for _ in 0..n {
        let (a, b, c) = (random::g31::<Q>(rng), random::g31::<Q>(rng), random::g31::<Q>(rng));
        let (ja, jb, jc) = (ok(a.to_jet())?, ok(b.to_jet())?, ok(c.to_jet())?);
        let d = ok(cochain_delta_eval(alpha, layer_act, mul, &ja, &jb, &jc))?;
        ensure!(d.iter().all(Scalar::is_zero), "δα = {d:?} on {a:?} {b:?} {c:?}");
        let value = ok(alpha_cocycle(&ja, &jb))?.coeff(0, &t4);
        ensure!(value == ok(e41_closed_form(&a, &b))?, "α({a:?}, {b:?}) = {value} disagrees with closed form");
    }
    Ok(format!("{n} triples and pairs"))
}

/// Maurer–Cartan data of the Heisenberg manifold and its class.
pub fn heisenberg_class(_: &mut ChaCha8Rng, _: usize) -> CheckResult {
    let m = heisenberg::<Q>();
    let forms = ok(["a", "b", "c"].iter().map(|s| m.symbol(s)).collect::<crate::Result<Vec<_>>>())?;
    let data = McData::rank1(vec![forms[0].clone(), forms[1].clone(), forms[2].iter().map(|x| -x.clone()).collect()]);
    ensure!(ok(mc_check(&m, &data))?.iter().all(FormField::is_zero), "nonzero residual");
    let e = ok(ext_class_rep(&m, &data))?.rank1_form(&m);
    ensure!(e == ok(m.combination(&[("a^c", q(-2))]))?, "class is {}", m.format(&e));
    let ex = ok(is_exact(&m, &e, 2, 0))?;
    ensure!(!ex.exact && ex.certificate.is_some(), "class reported exact");
    Ok(format!("class {}", m.format(&e)))
}

/// Group-side liftability against the quadric and the de Rham class.
pub fn surface_quadric_oracle(rng: &mut ChaCha8Rng, n: usize) -> CheckResult {
    let mut ratio: Option<Q> = None;
    let mut summary = Vec::new();
    for genus in 1..=2 {
        let model = ok(surface::<Q>(genus))?;
        let (mut zero, mut nonzero) = (0, 0);
        for _ in 0..n {
            let periods = random::surface_periods(rng, genus, 0.5);
            let quad = surface_quadric(&periods);
            let report = ok(lift_obstruction(&ok(surface_rep_bridge(genus, &periods))?))?;
            ensure!(
                report.liftable == quad.is_zero(),
                "genus {genus}: liftable = {} but quadric = {quad}",
                report.liftable
            );
            let e = ok(ext_class_rep(&model, &ok(surface_mc_data(&model, &periods))?))?.rank1_form(&model);
            ensure!(
                ok(is_exact(&model, &e, 2, 0))?.exact == quad.is_zero(),
                "genus {genus}: de Rham class disagrees with the quadric"
            );
            if quad.is_zero() {
                zero += 1;
                continue;
            }
            nonzero += 1;
            let r = &report.defect_vector[0] / &quad;
            match &ratio {
                None => ratio = Some(r),
                Some(c) => ensure!(*c == r, "defect/quadric ratio varies: {c} vs {r}"),
            }
        }
        summary.push(format!("genus {genus}: {zero} on / {nonzero} off the quadric"));
    }
    let c = ratio.ok_or("no sample off the quadric")?;
    ensure!(!c.is_zero(), "defect/quadric ratio is zero");
    Ok(format!("{}; defect = {c} * quadric", summary.join(", ")))
}

fn random_torus_rep(rng: &mut ChaCha8Rng) -> std::result::Result<Representation<Q>, String> {
    let p = Presentation::torus();
    if rng.gen_bool(0.5) {
        // Unipotent images commute in G_{3,1}.
        let mut chart = || [random::rational(rng, 4), random::rational(rng, 4), q(1)];
        let charts = [chart(), chart()];
        ok(Representation::from_g31_charts(p, 3, &charts))
    } else {
        let (a, b) = (random::nonzero_rational(rng, 4), random::nonzero_rational(rng, 4));
        let r = ok(Representation::from_g31_charts(p, 3, &[[q(0), q(0), a], [q(0), q(0), b]]))?;
        let h: J = random::jet_diffeo(rng, 1, 3, 0.8);
        ok(r.conjugate(&h))
    }
}

/// Liftability is conjugation invariant and defects move by `im d1`.
pub fn equivariance(rng: &mut ChaCha8Rng, n: usize) -> CheckResult {
    let mut lifted = 0;
    for _ in 0..n {
        let r = random_torus_rep(rng)?;
        let g: J = random::jet_diffeo(rng, 1, 3, 0.8);
        let conj = ok(r.conjugate(&g))?;
        let (a, b) = (ok(lift_obstruction(&r))?, ok(lift_obstruction(&conj))?);
        ensure!(a.liftable == b.liftable, "liftability changes under conjugation by {g:?}");
        lifted += a.liftable as usize;
        let moved = ok(layer_act(&g, &a.defect_vector))?;
        let diff = sub_vec(&b.defect_vector, &moved);
        let image: Vec<Vec<Q>> = b.d1.transpose().to_rows();
        ensure!(ok(in_span(&diff, &image))?, "defect difference {diff:?} not in im d1");
    }
    Ok(format!("{n} pairs, {lifted} liftable"))
}

/// `dim H¹` for the standard presentations.
pub fn h1_table(_: &mut ChaCha8Rng, _: usize) -> CheckResult {
    let circle = Presentation::circle();
    let dim = |p: &Presentation, act: ModuleAction<Q>| ok(twisted_h1(p, &act)).map(|h| h.h1_dim);
    ensure!(dim(&circle, ModuleAction::trivial(1, 1))? == 1, "circle, trivial");
    ensure!(dim(&circle, ok(ModuleAction::scalars(&[q(2)]))?)? == 0, "circle, λ = 2");
    ensure!(dim(&Presentation::torus(), ModuleAction::trivial(2, 1))? == 2, "torus, trivial");
    for g in 1..=3 {
        let p = ok(Presentation::surface(g))?;
        ensure!(dim(&p, ModuleAction::trivial(2 * g, 1))? == 2 * g, "genus {g}, trivial");
    }
    Ok("circle 1, circle(2) 0, torus 2, genus 1..3 -> 2g".into())
}

/// Lifts of a liftable torus representation, found two ways.
pub fn extension_space(_: &mut ChaCha8Rng, _: usize) -> CheckResult {
    let r = ok(Representation::from_g31_charts(
        Presentation::torus(),
        3,
        &[[q(1), q(2), q(1)], [q(2), q(4), q(1)]],
    ))?;
    let space = ok(enumerate_lifts(&r))?;
    ensure!(space.z1_basis.len() == 2 && space.h1_dim == 2, "Z¹ = {}, H¹ = {}", space.z1_basis.len(), space.h1_dim);
    // Unknown t⁴ coefficients (u, v) on zero-padded lifts; the relator's t⁴
    // coefficient is affine in (u, v), so three evaluations pin it down.
    let p = r.presentation();
    let t4 = MultiIndex::new(vec![4]).expect("one variable");
    let padded: Vec<J> = ok(r.images().iter().map(|g| JetDiffeo::new(g.map().pad_to(4)?)).collect())?;
    let with = |u: &Q, v: &Q| -> std::result::Result<Q, String> {
        let imgs: Vec<J> = ok(padded
            .iter()
            .zip([u, v])
            .map(|(g, c)| JetDiffeo::new(g.map().add(&JetMap::from_terms(1, 4, [(0, t4.clone(), c.clone())])?)?))
            .collect())?;
        Ok(ok(relator_defects(p, &imgs))?[0].coeff(0, &t4))
    };
    let base = with(&q(0), &q(0))?;
    let du = &with(&q(1), &q(0))? - &base;
    let dv = &with(&q(0), &q(1))? - &base;
    for _ in 0..5 {
        let (u, v) = (Q::from_i64(7), Q::new(3.into(), 5.into()));
        ensure!(with(&u, &v)? == &base + &du * &u + &dv * &v, "relator is not affine in the unknowns");
    }
    let brute = ok(crate::jetcore::Matrix::from_rows(vec![vec![du, dv]]))?;
    let sol = ok(brute.solve_affine(&[-base]))?.ok_or("brute force finds no lift")?;
    ensure!(sol.kernel.len() == 2, "brute-force solution set has dimension {}", sol.kernel.len());
    ensure!(ok(same_span(2, &sol.kernel, &space.z1_basis))?, "solution directions differ from Z¹");
    let particular: Vec<J> = ok(padded
        .iter()
        .zip(&sol.particular)
        .map(|(g, c)| JetDiffeo::new(g.map().add(&JetMap::from_terms(1, 4, [(0, t4.clone(), c.clone())])?)?))
        .collect())?;
    let particular = ok(Representation::new(p.clone(), 1, 4, particular))?;
    let offset = ok(space.difference(&particular))?;
    ensure!(ok(in_span(&offset, &space.z1_basis))?, "brute-force lift is not in the affine lift space");
    Ok("affine dimension 2 = dim Z¹, H¹ = 2, brute force agrees".into())
}

/// The `(α∧β, 2α∧γ, β∧γ)` pattern in codimension two.
pub fn codimension_two(_: &mut ChaCha8Rng, _: usize) -> CheckResult {
    let m = trivial_rank2::<Q>();
    let mi = |e: [u32; 2]| MultiIndex::new(e.to_vec()).expect("two variables");
    let mut eta = ok(FormField::zero(2, 2))?;
    for (e, s) in [([2, 0], "alpha"), ([1, 1], "beta"), ([0, 2], "gamma")] {
        ok(eta.add_term(1, mi(e), &ok(m.symbol(s))?))?;
    }
    let e = ok(ext_class_rep(&m, &McData { k: 2, eta: vec![eta] }))?;
    let expected = [
        ([3, 0], ok(m.symbol("alpha^beta"))?),
        ([2, 1], ok(m.combination(&[("alpha^gamma", q(2))]))?),
        ([1, 2], ok(m.symbol("beta^gamma"))?),
    ];
    ensure!(e.terms().count() == 3, "unexpected extra terms: {}", e.display(&m));
    for (j, w) in &expected {
        ensure!(e.coeff(1, &mi(*j)) == Some(w), "coefficient of {j:?} is wrong: {}", e.display(&m));
    }
    let shown = e.display(&m).to_string();
    Ok(shown)
}

/// Sphere dimensions for surfaces and scale invariance of the normal form.
pub fn classification(rng: &mut ChaCha8Rng, n: usize) -> CheckResult {
    for (g, dim) in [(1, 3), (2, 7), (3, 11)] {
        let report = ok(classify_b4(&ok(Presentation::surface(g))?, &vec![q(1); 2 * g]))?;
        ensure!(report.sphere_dim() == Some(dim), "genus {g}: {:?}", report.stratum);
    }
    let mut worst = 0f64;
    for _ in 0..n {
        let (n1, n2) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let u: Vec<f64> = (0..n1).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let v: Vec<f64> = (0..n2).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let Ok(base) = normalize_orbit(&u, &v) else {
            continue;
        };
        let t: f64 = 10f64.powf(rng.gen_range(-2.0..2.0));
        let su: Vec<f64> = u.iter().map(|x| x / t).collect();
        let sv: Vec<f64> = v.iter().map(|x| x / (t * t)).collect();
        let moved = normalize_orbit(&su, &sv).map_err(|e| e.to_string())?;
        for (a, b) in base.u.iter().chain(&base.v).zip(moved.u.iter().chain(&moved.v)) {
            worst = worst.max((a - b).abs());
        }
        let norm: f64 = base.u.iter().chain(&base.v).map(|x| x * x).sum();
        ensure!((norm - 1.0).abs() < 1e-12, "representative has norm² {norm}");
        let (fu, fv) = z2_action(&u, &v);
        let flipped = normalize_orbit(&fu, &fv).map_err(|e| e.to_string())?;
        ensure!((flipped.u, flipped.v) == z2_action(&base.u, &base.v), "ℤ/2 does not commute with normalization");
    }
    ensure!(worst < 1e-12, "scale invariance off by {worst:e}");
    Ok(format!("sphere dims 3, 7, 11; max deviation {worst:.1e} over {n} samples"))
}

/// `h_1 = id`, `h_0 = j∘π`, `h_t` is a homomorphism and equals conjugation.
pub fn dilation(rng: &mut ChaCha8Rng, n: usize) -> CheckResult {
    for _ in 0..n {
        let l = rng.gen_range(1..=2);
        let k = rng.gen_range(1..=4);
        let g: J = random::jet_diffeo(rng, l, k, 0.5);
        let h: J = random::jet_diffeo(rng, l, k, 0.5);
        ensure!(ok(dilation_homotopy(&q(1), &g))? == g, "h_1 != id");
        let linear = ok(JetDiffeo::linear(&g.linear_part(), k))?;
        ensure!(ok(dilation_homotopy(&q(0), &g))? == linear, "h_0 != j∘π");
        let t = random::nonzero_rational(rng, 6);
        let t = if t.is_negative() { -t } else { t };
        let ht = |x: &J| dilation_homotopy(&t, x);
        ensure!(ok(ht(&ok(g.compose(&h))?))? == ok(ok(ht(&g))?.compose(&ok(ht(&h))?))?, "h_t not multiplicative");
        ensure!(ok(ht(&g))? == ok(dilation_conjugate(&t, &g))?, "h_t != conjugation at t = {t}");
        let levy = ok(LevyCoords::decompose(&g))?;
        ensure!(ok(levy.recompose(k))? == g, "Levy coordinates do not recompose");
    }
    Ok(format!("{n} elements"))
}

/// Serializers and parsers are mutually inverse on canonical text.
pub fn round_trip(rng: &mut ChaCha8Rng, n: usize) -> CheckResult {
    for _ in 0..n {
        let l = rng.gen_range(1..=3);
        let k = rng.gen_range(1..=4);
        let g: J = random::jet_diffeo(rng, l, k, 0.5);
        let text = io::to_text(&io::jet_to_json(g.map()));
        let back: JetMap<Q> = ok(io::jet_from_json(&serde_json::from_str(&text).map_err(|e| e.to_string())?, ""))?;
        ensure!(&back == g.map(), "jet round trip changed the value");
        ensure!(io::to_text(&io::jet_to_json(&back)) == text, "jet text not canonical");
        let gf: JetDiffeo<f64> = random::jet_diffeo(rng, l, k, 0.5);
        let back: JetMap<f64> = ok(io::jet_from_json(&io::jet_to_json(gf.map()), ""))?;
        ensure!(
            back.terms().zip(gf.map().terms()).all(|(a, b)| a.2.to_bits() == b.2.to_bits()),
            "float round trip is not bit exact"
        );
        let levy = ok(LevyCoords::decompose(&g))?;
        ensure!(ok(io::levy_from_json::<Q>(&io::levy_to_json(&levy), ""))? == levy, "Levy round trip");
    }
    let r = random_torus_rep(rng)?;
    let v = io::representation_to_json(&r);
    ensure!(ok(io::representation_from_json::<Q>(&v, "", None))? == r, "representation round trip");
    let m = heisenberg::<Q>();
    ensure!(ok(io::model_from_json::<Q>(&io::model_to_json(&m), ""))? == m, "model round trip");
    Ok(format!("{n} jets, Levy coordinates, a representation and a model"))
}

pub type Check = fn(&mut ChaCha8Rng, usize) -> CheckResult;

/// The suite with default sample counts.
pub const SUITE: &[(&str, Check, usize)] = &[
    ("group_axioms", group_axioms, 20),
    ("chart_laws", chart_laws, 30),
    ("exp_log", exp_log, 30),
    ("cocycle", cocycle, 30),
    ("heisenberg_class", heisenberg_class, 1),
    ("surface_quadric", surface_quadric_oracle, 30),
    ("equivariance", equivariance, 15),
    ("h1_table", h1_table, 1),
    ("extension_space", extension_space, 1),
    ("codimension_two", codimension_two, 1),
    ("classification", classification, 300),
    ("dilation", dilation, 30),
    ("round_trip", round_trip, 30),
];

#[derive(Clone, Debug)]
pub struct Outcome {
    pub name: &'static str,
    pub result: CheckResult,
    pub seconds: f64,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.result.is_ok()
    }
}

/// Runs every check with its own generator derived from `seed`.
pub fn run(seed: u64, scale: f64) -> Vec<Outcome> {
    SUITE
        .iter()
        .enumerate()
        .map(|(i, (name, check, n))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let samples = ((*n as f64 * scale).ceil() as usize).max(1);
            let start = Instant::now();
            let result = check(&mut rng, samples);
            Outcome {
                name,
                result,
                seconds: start.elapsed().as_secs_f64(),
            }
        })
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// JUnit-style XML summary.
pub fn junit_xml(outcomes: &[Outcome]) -> String {
    let failures = outcomes.iter().filter(|o| !o.passed()).count();
    let total: f64 = outcomes.iter().map(|o| o.seconds).sum();
    let mut s = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        s,
        "<testsuite name=\"jetfol-selftest\" tests=\"{}\" failures=\"{failures}\" time=\"{total:.3}\">",
        outcomes.len()
    );
    for o in outcomes {
        let _ = write!(s, "  <testcase name=\"{}\" time=\"{:.3}\"", o.name, o.seconds);
        match &o.result {
            Ok(_) => s.push_str("/>\n"),
            Err(e) => {
                let _ = writeln!(s, ">\n    <failure message=\"{}\"/>\n  </testcase>", escape(e));
            }
        }
    }
    s.push_str("</testsuite>\n");
    s
}
