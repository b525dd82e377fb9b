//! Acceptance gate, run without the libtest harness: each criterion prints one
//! PASS/FAIL line and the process exits non-zero if any criterion failed.

use std::collections::HashSet;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_core::fiber::fiber_walk;
use toric_core::groebner::check_groebner_basis;
use toric_core::io::{parse_sv, ConfigFile, NestedFile};
use toric_core::{
    buchberger, build_nested, is_groebner_basis_of, kernel_enumerate, merged_configuration, sorting_gb,
    sv_configuration, toric_generators, verify_marking, Binomial, Configuration, Error, MarkedBasis, Monomial,
    MonomialOrder, NestedOrders, NestedSystem, Ring, SegreVeroneseSpec, TieBreak,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn read(name: &str) -> String {
    fs::read_to_string(fixture(name)).unwrap()
}

fn parts(name: &str) -> (Configuration, Vec<Configuration>, NestedOrders) {
    let f = NestedFile::parse(&read(name)).unwrap();
    let base = f.base.to_configuration().unwrap();
    let inner: Vec<Configuration> = f.inner.iter().map(|(c, _)| c.to_configuration().unwrap()).collect();
    let mut orders = NestedOrders::lex(inner.len());
    if let Some(o) = f.base_order {
        orders.base = o;
    }
    for (slot, (_, o)) in orders.inner.iter_mut().zip(&f.inner) {
        if let Some(o) = o {
            *slot = o.clone();
        }
    }
    (base, inner, orders)
}

fn system(name: &str) -> NestedSystem {
    let (base, inner, orders) = parts(name);
    build_nested(base, inner, &orders).unwrap()
}

fn sv(name: &str) -> Configuration {
    sv_configuration(&parse_sv(&read(name)).unwrap()).unwrap()
}

fn binomials(ring: &Ring, lines: &[&str]) -> Vec<Binomial> {
    lines.iter().map(|l| Binomial::parse(l, ring).unwrap()).collect()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn criterion_1() -> Outcome {
    let s = system("veronese_pair.nested");
    let members: Vec<String> = s.result().members().iter().map(ToString::to_string).collect();
    let listed = [
        "u1_1^4",
        "u1_1^3*u1_2",
        "u1_1^2*u1_2^2",
        "u1_1*u1_2^3",
        "u1_2^4",
        "u1_1^2*u2_1^2",
        "u1_1^2*u2_1*u2_2",
        "u1_1^2*u2_2^2",
        "u1_1*u1_2*u2_1^2",
        "u1_1*u1_2*u2_1*u2_2",
        "u1_1*u1_2*u2_2^2",
        "u1_2^2*u2_1^2",
        "u1_2^2*u2_1*u2_2",
        "u1_2^2*u2_2^2",
        "u2_1^4",
        "u2_1^3*u2_2",
        "u2_1^2*u2_2^2",
        "u2_1*u2_2^3",
        "u2_2^4",
    ];
    let got: HashSet<&str> = members.iter().map(String::as_str).collect();
    ensure(
        got == listed.into_iter().collect::<HashSet<_>>() && members.len() == 19,
        format!("members {members:?}"),
    )?;
    let g = s.main1_basis().map_err(|e| e.to_string())?;
    ensure(g.len() == 105, format!("{} binomials", g.len()))?;
    let displayed = binomials(
        s.result().source(),
        &[
            "x_{u1_1^2*u1_2^2}*x_{u2_1^2*u2_2^2} -> x_{u1_1*u1_2*u2_1*u2_2}^2",
            "x_{u1_1^4}*x_{u1_2^2*u2_1*u2_2} -> x_{u1_1^3*u1_2}*x_{u1_1*u1_2*u2_1*u2_2}",
            "x_{u1_1^2*u1_2^2}*x_{u1_1^2*u2_1*u2_2} -> x_{u1_1^3*u1_2}*x_{u1_1*u1_2*u2_1*u2_2}",
            "x_{u1_1^3*u1_2}^2 -> x_{u1_1^4}*x_{u1_1^2*u1_2^2}",
        ],
    );
    for b in displayed {
        ensure(g.elements().contains(&b), format!("missing {b}"))?;
    }
    Ok(())
}

const FINAL_MAIN1: [&str; 6] = [
    "x_{u1*u2}^2 -> x_{u1^2}*x_{u2^2}",
    "x_{u1*u3}^2 -> x_{u1^2}*x_{u3^2}",
    "x_{u2*u3}^2 -> x_{u2^2}*x_{u3^2}",
    "x_{u1*u2}*x_{u1*u3} -> x_{u1^2}*x_{u2*u3}",
    "x_{u1*u3}*x_{u2^2} -> x_{u1*u2}*x_{u2*u3}",
    "x_{u1*u3}*x_{u2*u3} -> x_{u1*u2}*x_{u3^2}",
];
const FINAL_MAIN2: [&str; 6] = [
    "x_{u1^2}*x_{u2^2} -> x_{u1*u2}^2",
    "x_{u1^2}*x_{u3^2} -> x_{u1*u3}^2",
    "x_{u2^2}*x_{u3^2} -> x_{u2*u3}^2",
    "x_{u1^2}*x_{u2*u3} -> x_{u1*u2}*x_{u1*u3}",
    "x_{u1*u3}*x_{u2^2} -> x_{u1*u2}*x_{u2*u3}",
    "x_{u1*u2}*x_{u3^2} -> x_{u1*u3}*x_{u2*u3}",
];

fn as_set(g: &[Binomial]) -> HashSet<String> {
    g.iter().map(ToString::to_string).collect()
}

fn criterion_2() -> Outcome {
    let s = system("square_of_three.nested");
    let x = s.result().source();
    let g1 = s.main1_basis().map_err(|e| e.to_string())?;
    let g2 = s.main2_basis().map_err(|e| e.to_string())?;
    let p1 = MarkedBasis::marked(x, binomials(x, &FINAL_MAIN1)).unwrap();
    let p2 = MarkedBasis::marked(x, binomials(x, &FINAL_MAIN2)).unwrap();
    ensure(g1.same_marked_set(&p1), format!("main1 {:?}", as_set(g1.elements())))?;
    ensure(g2.same_marked_set(&p2), format!("main2 {:?}", as_set(g2.elements())))?;
    let ours: HashSet<String> = as_set(g1.elements())
        .symmetric_difference(&as_set(g2.elements()))
        .cloned()
        .collect();
    let listed: HashSet<String> = as_set(p1.elements())
        .symmetric_difference(&as_set(p2.elements()))
        .cloned()
        .collect();
    ensure(
        ours == listed,
        "marked sets differ in other places than the listed ones",
    )
}

fn oracle_equivalent(name: &str, c: &Configuration, g: &MarkedBasis) -> Outcome {
    let gens = toric_generators(c).map_err(|e| e.to_string())?;
    ensure(
        is_groebner_basis_of(g, &gens, Some(c.presentation())).map_err(|e| e.to_string())?,
        format!("{name}: not a Gröbner basis of the toric ideal"),
    )?;
    let cert = verify_marking(g).ok_or(format!("{name}: no weight certificate"))?;
    let order = cert
        .to_order(c.source(), TieBreak::Grevlex)
        .map_err(|e| e.to_string())?;
    let again = buchberger(&gens, &order).map_err(|e| e.to_string())?;
    ensure(
        again.same_marked_set(g),
        format!("{name}: certified order gives a different reduced basis"),
    )
}

fn criterion_3() -> Outcome {
    for name in ["veronese_pair.nested", "square_of_three.nested", "exam.nested"] {
        let s = system(name);
        ensure(name != "exam.nested" || s.result().len() == 27, "exam system size")?;
        oracle_equivalent(name, s.result(), &s.main1_basis().map_err(|e| e.to_string())?)?;
        oracle_equivalent(name, s.result(), &s.main2_basis().map_err(|e| e.to_string())?)?;
    }
    for name in ["segre_2x2.sv", "veronese_d2.sv", "veronese_d3.sv"] {
        let c = sv(name);
        oracle_equivalent(name, &c, &sorting_gb(&c).map_err(|e| e.to_string())?)?;
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let (base, inner, orders) = parts("shared.nested");
    match build_nested(base.clone(), inner.clone(), &orders) {
        Err(Error::SharedVariables(_)) => {}
        other => {
            return Err(format!(
                "shared variables accepted: {:?}",
                other.map(|s| s.result().len())
            ))
        }
    }
    let merged = merged_configuration(&base, &inner).map_err(|e| e.to_string())?;
    ensure(merged.len() == 6, format!("{} merged members", merged.len()))?;
    let gens = toric_generators(&merged).map_err(|e| e.to_string())?;
    let g = buchberger(&gens, &MonomialOrder::grevlex(merged.source())).map_err(|e| e.to_string())?;
    ensure(
        g.len() == 1 && g.elements()[0].lead().degree() == 3,
        format!("basis {:?}", as_set(g.elements())),
    )?;
    // lex gives the same single cubic: the ideal is principal
    let lex = buchberger(&gens, &MonomialOrder::lex(merged.source())).map_err(|e| e.to_string())?;
    ensure(lex.len() == 1, "lex basis is not a single binomial")?;
    ensure(
        kernel_enumerate(&merged, 2).map_err(|e| e.to_string())?.is_empty(),
        "quadrics in the ideal",
    )?;
    // every quadratic marking of quadratic binomials fails
    let x = merged.source();
    let quad: Vec<Monomial> = (0..6)
        .flat_map(|i| (i..6).map(move |j| (i, j)))
        .map(|(i, j)| x.var(i).mul(&x.var(j)).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let a = quad.choose(&mut rng).unwrap().clone();
        let b = quad.choose(&mut rng).unwrap().clone();
        if a == b {
            continue;
        }
        let candidate = MarkedBasis::marked(x, vec![Binomial::new(a, b).unwrap()]).unwrap();
        let passes = match check_groebner_basis(&candidate, &gens, Some(merged.presentation())) {
            Ok(c) => c.holds(),
            Err(_) => false,
        };
        ensure(!passes, "a quadratic set passed")?;
    }
    Ok(())
}

fn is_sorted_pair(a: &[u32], b: &[u32]) -> bool {
    let interleaved: Vec<u32> = a.iter().zip(b).flat_map(|(x, y)| [*x, *y]).collect();
    interleaved.windows(2).all(|w| w[0] <= w[1])
}

fn index_string(m: &Monomial) -> Vec<u32> {
    m.exponents()
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| std::iter::repeat_n(i as u32 + 1, p as usize))
        .collect()
}

fn criterion_5() -> Outcome {
    let mut specs = Vec::new();
    for d in 2..=4 {
        for tau in 2..=3 {
            specs.push(SegreVeroneseSpec::veronese(d, tau).unwrap());
        }
    }
    for d in 2..=5 {
        specs.push(SegreVeroneseSpec::squarefree_veronese(d, 2).unwrap());
    }
    specs.push(parse_sv(&read("segre_2x3.sv")).unwrap());
    for spec in specs {
        let c = sv_configuration(&spec).map_err(|e| e.to_string())?;
        let g = sorting_gb(&c).map_err(|e| e.to_string())?;
        oracle_equivalent(&format!("{spec:?}"), &c, &g)?;
        for lead in g.minimal_leads() {
            ensure(lead.degree() == 2 && lead.is_squarefree(), format!("lead {lead}"))?;
            let vars: Vec<usize> = (0..lead.exponents().len())
                .filter(|&i| lead.exponents()[i] > 0)
                .collect();
            let (a, b) = (index_string(&c.members()[vars[0]]), index_string(&c.members()[vars[1]]));
            ensure(
                !is_sorted_pair(&a, &b) && !is_sorted_pair(&b, &a),
                format!("sorted lead {lead}"),
            )?;
        }
    }
    Ok(())
}

fn random_monomial(rng: &mut ChaCha8Rng, ring: &Ring, degree: u32) -> Monomial {
    let mut e = vec![0u32; ring.len()];
    for _ in 0..degree {
        e[rng.gen_range(0..ring.len())] += 1;
    }
    ring.monomial(e).unwrap()
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for name in [
        "veronese_pair.nested",
        "square_of_three.nested",
        "exam.nested",
        "square_lead_inner.nested",
    ] {
        let s = system(name);
        let c = s.result();
        let moves = buchberger(&toric_generators(c).unwrap(), &MonomialOrder::grevlex(c.source())).unwrap();
        let (mut members, mut others) = (0, 0);
        for t in 0..1000 {
            let deg = rng.gen_range(2..=3);
            let a = random_monomial(&mut rng, c.source(), deg);
            let b = if t % 2 == 0 {
                let walk = fiber_walk(c, &moves, a.exponents(), 6, rng.gen(), false).unwrap();
                c.source().monomial(walk.last().unwrap().clone()).unwrap()
            } else {
                random_monomial(&mut rng, c.source(), deg)
            };
            // keylemma_test errors when the routes disagree or phi_0 fails
            let out = s.keylemma_test(&a, &b).map_err(|e| format!("{name}: {e}"))?;
            let direct = c.presentation().evaluate(&a).unwrap() == c.presentation().evaluate(&b).unwrap();
            ensure(out.member == direct, format!("{name}: {a} - {b}"))?;
            if direct {
                members += 1;
            } else {
                others += 1;
            }
        }
        ensure(
            members > 100 && others > 100,
            format!("{name}: {members} members, {others} others"),
        )?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for name in ["veronese_pair.nested", "square_of_three.nested", "exam.nested"] {
        let s = system(name);
        ensure(
            s.inner_bases().iter().all(MarkedBasis::initial_ideal_is_squarefree),
            format!("{name}: inner"),
        )?;
        let g = s.main2_basis().map_err(|e| e.to_string())?;
        ensure(
            g.initial_ideal_is_squarefree(),
            format!("{name}: main2 initial ideal has a square"),
        )?;
    }
    // inner conic under grevlex: the initial ideal of I_B is generated by a square
    let s = system("square_lead_inner.nested");
    let g = s.main2_basis().map_err(|e| e.to_string())?;
    oracle_equivalent("square_lead_inner", s.result(), &g)?;
    println!(
        "  note: with inner initial ideal {:?}, main2 initial ideal squarefree = {}",
        s.inner_bases()[0]
            .minimal_leads()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>(),
        g.initial_ideal_is_squarefree()
    );
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    // binomial closure
    let mut reductions = 0;
    for name in ["veronese_pair.nested", "exam.nested"] {
        let s = system(name);
        let g = s.main1_basis().unwrap();
        let p = s.result().presentation();
        for _ in 0..5000 {
            let deg = rng.gen_range(1..=5);
            let m = random_monomial(&mut rng, s.result().source(), deg);
            let nf = g.normal_form(&m).map_err(|e| e.to_string())?;
            ensure(
                p.evaluate(&m).unwrap() == p.evaluate(&nf).unwrap() && g.is_standard(&nf),
                format!("{m}"),
            )?;
            reductions += 1;
        }
    }
    ensure(reductions >= 10_000, "too few reductions")?;
    // idempotence and permutation invariance
    for c in [
        system("veronese_pair.nested").result().clone(),
        sv("veronese_d4_tau3.sv"),
    ] {
        let gens = toric_generators(&c).unwrap();
        for order in [MonomialOrder::lex(c.source()), MonomialOrder::grevlex(c.source())] {
            let g = buchberger(&gens, &order).unwrap();
            ensure(
                buchberger(g.elements(), &order).unwrap().same_marked_set(&g),
                "not idempotent",
            )?;
            for _ in 0..3 {
                let mut shuffled = gens.clone();
                shuffled.shuffle(&mut rng);
                ensure(
                    buchberger(&shuffled, &order).unwrap().same_marked_set(&g),
                    "input order matters",
                )?;
            }
        }
    }
    // order axioms
    let ring = Ring::new(["t1", "t2", "t3", "t4"]).unwrap();
    let orders = [
        MonomialOrder::lex(&ring),
        MonomialOrder::grlex(&ring),
        MonomialOrder::grevlex(&ring),
        MonomialOrder::parse("weighted:1,2,0,1/2;grevlex", &ring).unwrap(),
        MonomialOrder::parse("weighted:1,1,1,1;lex", &ring).unwrap(),
    ];
    for order in &orders {
        for _ in 0..1000 {
            let (da, db, dc) = (rng.gen_range(0..5), rng.gen_range(0..5), rng.gen_range(0..5));
            let a = random_monomial(&mut rng, &ring, da);
            let b = random_monomial(&mut rng, &ring, db);
            let n = random_monomial(&mut rng, &ring, dc);
            let ab = order.compare(&a, &b).unwrap();
            ensure(order.compare(&b, &a).unwrap() == ab.reverse(), "antisymmetry")?;
            ensure((ab == std::cmp::Ordering::Equal) == (a == b), "equality")?;
            ensure(
                order.compare(&a.mul(&n).unwrap(), &b.mul(&n).unwrap()).unwrap() == ab,
                "multiplicativity",
            )?;
            ensure(
                order.compare(&ring.unit(), &a).unwrap() != std::cmp::Ordering::Greater,
                "unit minimal",
            )?;
            let bn = order.compare(&b, &n).unwrap();
            if ab == bn && ab != std::cmp::Ordering::Equal {
                ensure(order.compare(&a, &n).unwrap() == ab, "transitivity")?;
            }
        }
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_toric")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_9() -> Outcome {
    let f = |n: &str| fixture(n).display().to_string();
    let runs: Vec<(Vec<String>, &str)> = vec![
        (vec!["toric".into(), f("conic.config")], "conic.gb"),
        (vec!["toric".into(), f("free.config")], "free.gb"),
        (vec!["toric".into(), f("shared_merged.config")], "shared_merged.gb"),
        (
            vec![
                "nested".into(),
                f("veronese_pair.nested"),
                "--mode".into(),
                "main1".into(),
            ],
            "veronese_pair.main1.gb",
        ),
        (
            vec![
                "nested".into(),
                f("veronese_pair.nested"),
                "--mode".into(),
                "main2".into(),
            ],
            "veronese_pair.main2.gb",
        ),
        (
            vec![
                "nested".into(),
                f("square_of_three.nested"),
                "--mode".into(),
                "main1".into(),
            ],
            "square_of_three.main1.gb",
        ),
        (
            vec![
                "nested".into(),
                f("square_of_three.nested"),
                "--mode".into(),
                "main2".into(),
            ],
            "square_of_three.main2.gb",
        ),
        (
            vec!["nested".into(), f("exam.nested"), "--mode".into(), "main1".into()],
            "exam.main1.gb",
        ),
        (
            vec!["nested".into(), f("exam.nested"), "--mode".into(), "main2".into()],
            "exam.main2.gb",
        ),
        (vec!["sv".into(), f("segre_2x2.sv")], "segre_2x2.gb"),
        (vec!["sv".into(), f("segre_2x3.sv")], "segre_2x3.gb"),
        (vec!["sv".into(), f("veronese_d2.sv")], "veronese_d2.gb"),
        (vec!["sv".into(), f("veronese_d3.sv")], "veronese_d3.gb"),
        (vec!["sv".into(), f("veronese_d4_tau3.sv")], "veronese_d4_tau3.gb"),
        (
            vec!["sv".into(), f("squarefree_veronese_d5.sv")],
            "squarefree_veronese_d5.gb",
        ),
    ];
    for (args, expected) in runs {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, first) = run_cli(&args);
        ensure(code == 0, format!("{args:?} exited {code}"))?;
        let (_, second) = run_cli(&args);
        ensure(first == second, format!("{args:?} is not deterministic"))?;
        let want = fs::read(fixture(&format!("expected/{expected}"))).unwrap();
        ensure(first == want, format!("{args:?} differs from expected/{expected}"))?;
    }
    let walk = [
        "fiber-walk",
        &f("conic.config"),
        "--start",
        "2,1,1",
        "--steps",
        "200",
        "--seed",
        "42",
    ];
    let (code, a) = run_cli(&walk);
    let (_, b) = run_cli(&walk);
    ensure(code == 0 && a == b, "fiber walk is not deterministic")?;
    // round trip of every input fixture
    for entry in fs::read_dir(fixture("")).unwrap() {
        let path = entry.unwrap().path();
        let text = fs::read_to_string(&path).unwrap_or_default();
        match path.extension().and_then(|e| e.to_str()) {
            Some("config") => {
                let c = ConfigFile::parse(&text).unwrap();
                ensure(
                    ConfigFile::parse(&c.format()).unwrap() == c,
                    format!("{}", path.display()),
                )?;
            }
            Some("nested") => {
                let n = NestedFile::parse(&text).unwrap();
                ensure(
                    NestedFile::parse(&n.format()).unwrap() == n,
                    format!("{}", path.display()),
                )?;
            }
            Some("sv") => {
                let s = parse_sv(&text).unwrap();
                ensure(
                    parse_sv(&toric_core::io::format_sv(&s)).unwrap() == s,
                    format!("{}", path.display()),
                )?;
            }
            _ => {}
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 nested Veronese example: 19 members, 105 binomials", criterion_1),
        ("2 three-variable square example: both six-element bases", criterion_2),
        ("3 oracle equivalence on fixture systems", criterion_3),
        ("4 shared inner variables: rejection and principal cubic", criterion_4),
        ("5 sorting bases verify with squarefree nonsorted leads", criterion_5),
        ("6 membership through inner ideals agrees with direct test", criterion_6),
        ("7 squarefree initial ideal of the sorted nested basis", criterion_7),
        ("8 engine and order properties", criterion_8),
        ("9 CLI determinism and expected outputs", criterion_9),
    ];
    let mut failed = Vec::new();
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(()) => println!("PASS criterion {name}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed: {failed:?}");
        std::process::exit(1);
    }
}
