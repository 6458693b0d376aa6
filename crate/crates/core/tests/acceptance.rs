//! Acceptance criteria. Runs without the libtest harness so each criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singzeta::degeneracy::is_newton_nondegenerate;
use singzeta::family::{
    assemble_zeta, base_zeta, build_member, check_assumptions, mu2_generic_section, random_rational,
    representative, FamilyMember, SectionConfig, SingularPointCertificate,
};
use singzeta::io::{load_member, parse, parse_local_form, print};
use singzeta::newton::{newton_boundary, newton_number};
use singzeta::poly::{rat, Polynomial};
use singzeta::resolution::{
    build_dual_graph, builtin_catalog, chart_pullback, graphs_isomorphic, self_intersections_and_laufer,
    sigma_star,
};
use singzeta::zeta::{milnor_from_zeta, varchenko_zeta, varchenko_zeta_of, ZetaFunction};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, format!("took {:?}, limit {:?}", start.elapsed(), limit))
}

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

fn pair_member(h: &str) -> Result<FamilyMember, String> {
    let f = parse("(z1+z2-2z3)(z1+3z2-4z3)").map_err(e)?;
    let cert = SingularPointCertificate {
        point: [rat(1), rat(1), rat(1)],
        local_milnor: 1,
        branches: 2,
        local_normal_form: parse_local_form("v2^2+v3^2").map_err(e)?,
        type_tag: "A1".into(),
        coordinate_change: None,
    };
    build_member(f, parse(h).map_err(e)?, Polynomial::zero(3), vec![cert]).map_err(e)
}

fn c1_golden_pair() -> Outcome {
    let start = Instant::now();
    let m0 = pair_member("z2^5+z3^5")?;
    let m1 = pair_member("z2^5-z3^5")?;
    ensure(
        m0.g == parse("z1^2*(z1+z2-2*z3)*(z1+3*z2-4*z3)+z2^5+z3^5").map_err(e)?,
        "assembled g0 differs from its formula",
    )?;
    let z0 = assemble_zeta(&m0).map_err(e)?;
    let z1 = assemble_zeta(&m1).map_err(e)?;
    let want0 = ZetaFunction::from_pairs([(5, 2), (10, -5)]);
    let want1 = ZetaFunction::from_pairs([(5, 3), (10, -5), (6, -1)]);
    ensure(z0 == want0, format!("zeta(g0) = {z0}"))?;
    ensure(z1 == want1, format!("zeta(g1) = {z1}"))?;
    let (mu0, mu1) = (milnor_from_zeta(&z0, 3), milnor_from_zeta(&z1, 3));
    ensure((mu0, mu1) == (39, 40), format!("mu = {mu0}, {mu1}"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("zeta(g0) = {z0}, mu 39; zeta(g1) = {z1}, mu 40"))
}

fn c2_closed_form() -> Outcome {
    for d in 2u32..=5 {
        let start = Instant::now();
        let rep = representative(d);
        ensure(is_newton_nondegenerate(&rep).map_err(e)?, format!("representative for d={d} is degenerate"))?;
        let z = varchenko_zeta_of(&rep).map_err(e)?;
        let di = d as i64;
        let d64 = d as u64;
        let oracle = ZetaFunction::from_pairs([
            (d64 + 2, -di * di + 2 * di - 1),
            (d64 + 3, di + 1),
            (2 * d64 + 6, -2 * di - 1),
        ]);
        ensure(z == oracle, format!("d={d}: varchenko {z}, closed form {oracle}"))?;
        ensure(base_zeta(d).map_err(e)? == oracle, format!("d={d}: base_zeta disagrees"))?;
        within(start, Duration::from_secs(5))?;
    }
    Ok("d = 2..5 match exactly".into())
}

fn fermat_member(d: u32) -> Result<FamilyMember, String> {
    let f = parse(&format!("z1^{d}+z2^{d}+z3^{d}")).map_err(e)?;
    let h = parse(&format!("z2^{0}+z3^{0}", d + 3)).map_err(e)?;
    build_member(f, h, Polynomial::zero(3), vec![]).map_err(e)
}

fn c3_sectional_milnor() -> Outcome {
    let mut members = vec![pair_member("z2^5+z3^5")?];
    for d in 2..=6 {
        members.push(fermat_member(d)?);
    }
    let mut draws = 0;
    for m in &members {
        let d = m.d as i64;
        let want = d * d + 2 * d + 2;
        for seed in 1..=3u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 * d as u64 + seed);
            let (a, b) = (random_rational(&mut rng), random_rational(&mut rng));
            let cfg = SectionConfig { seed, retries: 16 };
            let s = mu2_generic_section(m, a, b, &cfg).map_err(e)?;
            ensure(s.mu2 == want, format!("d={d} seed {seed}: mu2 = {}, want {want}", s.mu2))?;
            draws += 1;
        }
    }
    Ok(format!("{draws} generic draws over d = 2..6"))
}

fn c4_assumption_discrimination() -> Outcome {
    let mode = singzeta::degeneracy::Mode::Exact;
    let r0 = check_assumptions(&pair_member("z2^5+z3^5")?, &mode).map_err(e)?;
    let r1 = check_assumptions(&pair_member("z2^5-z3^5")?, &mode).map_err(e)?;
    ensure(r0.sing_disjoint.pass, format!("g0: {}", r0.sing_disjoint))?;
    ensure(!r1.sing_disjoint.pass, "g1 passes")?;
    ensure(
        r1.sing_disjoint.failures.iter().any(|f| f.contains("[1:1:1]")),
        format!("g1 failure not at [1:1:1]: {}", r1.sing_disjoint),
    )?;
    Ok("g0 passes, g1 fails at [1:1:1]".into())
}

fn random_convenient_germ(rng: &mut ChaCha8Rng) -> Polynomial {
    let mut terms: Vec<(Vec<u32>, singzeta::poly::Rational)> = Vec::new();
    for i in 0..3 {
        let mut ex = vec![0u32; 3];
        ex[i] = rng.gen_range(2..=9);
        terms.push((ex, rat(rng.gen_range(1..=5))));
    }
    let extra = rng.gen_range(0..=5);
    for _ in 0..extra {
        let ex: Vec<u32> = (0..3).map(|_| rng.gen_range(0..=9)).collect();
        if ex.iter().sum::<u32>() >= 2 {
            let c = rng.gen_range(1..=7) * if rng.gen_bool(0.5) { 1 } else { -1 };
            terms.push((ex, rat(c)));
        }
    }
    Polynomial::from_terms(3, terms)
}

fn c5_cross_validation() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let (mut checked, mut skipped) = (0, 0);
    while checked < 200 {
        let g = random_convenient_germ(&mut rng);
        if g.len() > 8 || !is_newton_nondegenerate(&g).map_err(e)? {
            skipped += 1;
            continue;
        }
        let b = newton_boundary(&g).map_err(e)?;
        let nu = newton_number(&b).map_err(e)?;
        let mu = milnor_from_zeta(&varchenko_zeta(&b).map_err(e)?, 3);
        ensure(nu == mu, format!("{g}: newton number {nu}, zeta gives {mu}"))?;
        checked += 1;
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{checked} germs agree ({skipped} degenerate draws skipped)"))
}

fn c6_local_models() -> Outcome {
    let m0 = parse("z1^5 + z1^4 z2 z3").map_err(e)?;
    let m1 = parse("z1^4 z2 z3 + z1^5 z2 + z1^5 z3").map_err(e)?;
    let (z0, z1) = (varchenko_zeta_of(&m0).map_err(e)?, varchenko_zeta_of(&m1).map_err(e)?);
    ensure(z0 == ZetaFunction::factor(5, -1), format!("first model: {z0}"))?;
    ensure(z1 == ZetaFunction::factor(6, -1), format!("second model: {z1}"))?;
    // the ratio of the pair's zeta-functions is the ratio of the local factors
    let ratio = ZetaFunction::from_pairs([(5, 3), (10, -5), (6, -1)])
        .multiply(&ZetaFunction::from_pairs([(5, 2), (10, -5)]).inverse());
    ensure(ratio == z1.multiply(&z0.inverse()), "ratio mismatch")?;
    Ok(format!("{z0} and {z1}"))
}

fn c7_fan() -> Outcome {
    let fan = sigma_star();
    ensure(fan.maximal_cones.len() == 7, format!("{} cones", fan.maximal_cones.len()))?;
    for c in &fan.maximal_cones {
        ensure(fan.determinant(c).abs() == 1, format!("cone {:?} not unimodular", fan.cone_names(c)))?;
    }
    let m = pair_member("z2^5+z3^5")?;
    let chart = chart_pullback(&fan, &m.g, &["P", "e2", "e3"]).map_err(e)?;
    ensure(chart.orders[0] == ("P".to_string(), m.d + 2), format!("orders {:?}", chart.orders))?;
    ensure(chart.orders[1].1 == 0 && chart.orders[2].1 == 0, "e2, e3 orders nonzero")?;
    let u = |i| Polynomial::var(3, i);
    let f_chart = m.f.compose(&[Polynomial::one(3), u(1), u(2)]);
    let h_chart = m.h.compose(&[Polynomial::zero(3), u(1), u(2)]);
    let expected = &f_chart + &(&u(0) * &h_chart);
    ensure(
        chart.strict_transform == expected,
        format!("strict transform {}", print(&chart.strict_transform)),
    )?;
    Ok("7 unimodular cones; P-chart is u1^4 (f(1,u2,u3) + u1 h(u2,u3))".into())
}

fn c8_graphs() -> Outcome {
    let cat = builtin_catalog();
    let mut graphs = Vec::new();
    for name in ["g0", "g2", "triangle"] {
        let m = load_member(&data(&format!("members/{name}.json"))).map_err(e)?;
        graphs.push(build_dual_graph(&m, &cat).map_err(e)?);
    }
    for d in 2..=4 {
        graphs.push(build_dual_graph(&fermat_member(d)?, &cat).map_err(e)?);
    }
    for g in &graphs {
        let (_, report) = self_intersections_and_laufer(g).map_err(e)?;
        ensure(report.all_zero, format!("Laufer residuals {:?}", report.residuals))?;
        ensure(g.is_connected(), "graph not connected")?;
    }
    ensure(graphs_isomorphic(&graphs[0], &graphs[1], true), "d=2 nodal graphs differ")?;
    ensure(!graphs_isomorphic(&graphs[0], &graphs[3], true), "nodal and smooth graphs agree")?;
    Ok(format!("{} graphs satisfy the Laufer relation; d=2 nodal pair isomorphic", graphs.len()))
}

fn c9_brieskorn() -> Outcome {
    let start = Instant::now();
    for a in 2..=5i64 {
        for b in 2..=5i64 {
            for c in 2..=5i64 {
                let g = parse(&format!("z1^{a}+z2^{b}+z3^{c}")).map_err(e)?;
                let bd = newton_boundary(&g).map_err(e)?;
                let nu = newton_number(&bd).map_err(e)?;
                let want = (a - 1) * (b - 1) * (c - 1);
                ensure(nu == want, format!("({a},{b},{c}): newton number {nu}"))?;
                let mu = milnor_from_zeta(&varchenko_zeta(&bd).map_err(e)?, 3);
                ensure(mu == want, format!("({a},{b},{c}): zeta gives {mu}"))?;
            }
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok("64 exponent triples".into())
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = singzeta::cli::run(std::iter::once("singzeta").chain(args.iter().copied()), &mut out, &mut err);
    (code, out)
}

fn c10_round_trip_and_determinism() -> Outcome {
    let corpus = std::fs::read_to_string(data("corpus.txt")).map_err(e)?;
    let mut n = 0;
    for (i, line) in corpus.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let p = parse(line).map_err(|x| format!("corpus line {}: {x}", i + 1))?;
        let text = print(&p);
        let q = parse(&text).map_err(e)?;
        ensure(q == p && print(&q) == text, format!("corpus line {} does not round-trip", i + 1))?;
        n += 1;
    }
    let g0 = data("members/g0.json").display().to_string();
    let g1 = data("members/g1.json").display().to_string();
    let args = ["--json", "--seed", "99", "--mode", "randomized", "family", "compare", &g0, &g1];
    let (c1, o1) = run_cli(&args);
    let (c2, o2) = run_cli(&args);
    ensure(c1 == 0 && c2 == 0, format!("exit codes {c1}, {c2}"))?;
    ensure(o1 == o2, "JSON differs between runs")?;
    let mu2 = ["--json", "--seed", "7", "family", "mu2", &g0, "--a", "0", "--b", "0"];
    let (_, m1) = run_cli(&mu2);
    let (_, m2) = run_cli(&mu2);
    ensure(!m1.is_empty() && m1 == m2, "mu2 JSON differs between runs")?;
    Ok(format!("{n} corpus expressions; repeated seeded runs byte-identical"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 golden pair", c1_golden_pair),
        ("2 closed form", c2_closed_form),
        ("3 sectional Milnor number", c3_sectional_milnor),
        ("4 assumption discrimination", c4_assumption_discrimination),
        ("5 Kouchnirenko-Varchenko cross-validation", c5_cross_validation),
        ("6 local-model factors", c6_local_models),
        ("7 fan regularity", c7_fan),
        ("8 graph consistency", c8_graphs),
        ("9 Brieskorn", c9_brieskorn),
        ("10 CLI round-trip and determinism", c10_round_trip_and_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
