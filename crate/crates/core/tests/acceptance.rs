//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails or exceeds its time budget.

mod common;

use std::time::{Duration, Instant};

use common::{random_seq, related_to, rng, seq};
use knaster::cantor::{embed, format_rational, mirror0, parse_rational, unembed};
use knaster::continuum::center_x;
use knaster::oracle::{build, check_theorem};
use knaster::render::{render, RenderSpec, Viewport};
use knaster::{e0, e0star, synthesize, verify, witness_level, Arc, BinSeq, PathWitness};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rat(s: &str) -> BigRational {
    parse_rational(s).unwrap()
}

fn pow3(e: usize) -> BigInt {
    BigInt::from(3u32).pow(e as u32)
}

fn partial_sum(s: &BinSeq, terms: usize) -> BigRational {
    (0..terms)
        .filter(|&i| s.get(i))
        .map(|i| BigRational::new(BigInt::from(2u32), pow3(i + 1)))
        .fold(BigRational::zero(), |acc, t| acc + t)
}

fn centers() -> Outcome {
    ensure(center_x(0) == rat("1/2"), || {
        format!("x_0 = {}", format_rational(&center_x(0)))
    })?;
    ensure(center_x(1) == rat("5/6"), || {
        format!("x_1 = {}", format_rational(&center_x(1)))
    })?;
    ensure(center_x(2) == rat("5/18"), || {
        format!("x_2 = {}", format_rational(&center_x(2)))
    })?;
    for k in 1..=20 {
        let mut word = vec![false; k];
        word[k - 1] = true;
        let s = BinSeq::eventually_constant(word, false);
        let via_embed = (embed(&s).into_value() + embed(&s.hat().unwrap()).into_value())
            / BigRational::from_integer(2.into());
        let closed = BigRational::new(5.into(), BigInt::from(2u32) * pow3(k));
        ensure(center_x(k) == closed && via_embed == closed, || {
            format!("x_{k} mismatch")
        })?;
    }
    Ok(())
}

fn embedding() -> Outcome {
    let mut r = rng(2);
    let slack = BigRational::new(BigInt::one(), pow3(60));
    for _ in 0..500 {
        let s = random_seq(&mut r, 12, 12);
        let exact = embed(&s);
        let gap = (exact.value() - partial_sum(&s, 60)).abs();
        ensure(gap <= slack, || format!("{s}: closed form off by {gap}"))?;
        ensure(embed(&s.complement()) == mirror0(&exact), || {
            format!("{s}: complement")
        })?;
        if let Some(k) = s.level() {
            let sum = exact.value() + embed(&s.hat().unwrap()).value();
            ensure(sum == BigRational::new(5.into(), pow3(k)), || {
                format!("{s}: hat sum")
            })?;
        }
    }
    Ok(())
}

fn worked_example() -> Outcome {
    let (a, b) = (seq("0110(0)"), seq("0001(1)"));
    let w = synthesize(&a, &b).ok_or("no witness")?;
    let expected_via = vec![a.clone(), seq("1001(1)"), seq("111(0)"), b.clone()];
    ensure(w.via == expected_via, || {
        format!(
            "via = {:?}",
            w.via.iter().map(ToString::to_string).collect::<Vec<_>>()
        )
    })?;
    let levels: Vec<usize> = w.arcs.iter().map(Arc::level).collect();
    ensure(levels == [0, 1, 0], || format!("levels = {levels:?}"))?;
    ensure(verify(&w), || "witness does not verify".into())?;
    let g = build(6, 7).map_err(|e| e.to_string())?;
    let chain = g
        .shortest_chain(&a, &b)
        .map_err(|e| e.to_string())?
        .ok_or("BFS found no chain")?;
    ensure(chain.len() == 3, || format!("BFS length {}", chain.len()))?;
    let bfs = PathWitness::from_arcs(a, chain).map_err(|e| e.to_string())?;
    ensure(verify(&bfs) && bfs.to == b, || {
        "BFS chain does not verify".into()
    })
}

fn theorem_at_desk_scale() -> Outcome {
    for n in 2..=6 {
        let report = check_theorem(n).map_err(|e| e.to_string())?;
        ensure(report.is_clean(), || {
            format!(
                "N={n}: {} soundness, {} completeness violations",
                report.soundness_violations.len(),
                report.completeness_violations.len()
            )
        })?;
        let nodes = 1usize << (n + 1);
        ensure(
            report.nodes == nodes && report.pairs_checked == nodes * (nodes - 1) / 2,
            || {
                format!(
                    "N={n}: {} nodes, {} pairs",
                    report.nodes, report.pairs_checked
                )
            },
        )?;
    }
    Ok(())
}

fn witness_suite() -> Outcome {
    let mut r = rng(5);
    let mut related = 0;
    for i in 0..10_000 {
        let a = random_seq(&mut r, 10, 3);
        let b = if i % 2 == 0 {
            related_to(&mut r, &a)
        } else {
            random_seq(&mut r, 10, 3)
        };
        let w = synthesize(&a, &b);
        ensure(w.is_none() == !e0star(&a, &b), || {
            format!("{a} {b}: decider disagrees")
        })?;
        let Some(w) = w else { continue };
        related += 1;
        let n = witness_level(&a, &b).ok_or("missing witness level")?.n;
        ensure(verify(&w), || format!("{a} {b}: witness does not verify"))?;
        ensure(w.len() < 1usize << (n + 1), || {
            format!("{a} {b}: {} arcs at n={n}", w.len())
        })?;
        ensure(w.max_level().unwrap_or(0) <= n + 1, || {
            format!("{a} {b}: arc level too high")
        })?;
    }
    ensure(related >= 5_000, || {
        format!("only {related} related pairs generated")
    })
}

fn reduction() -> Outcome {
    let mut r = rng(6);
    for i in 0..1_000 {
        let a = random_seq(&mut r, 10, 4);
        let b = if i % 2 == 0 {
            a.with_head(&common::bits(&mut r, 8))
        } else {
            random_seq(&mut r, 10, 4)
        };
        ensure(
            e0(&a, &b) == e0star(&a.interleave(), &b.interleave()),
            || format!("{a} {b}"),
        )?;
    }
    Ok(())
}

fn render_counts() -> Outcome {
    let spec = RenderSpec {
        depth: 5,
        levels: 3,
        ..RenderSpec::default()
    };
    let svg = render(&spec).map_err(|e| e.to_string())?;
    let doc = roxmltree::Document::parse(&svg).map_err(|e| e.to_string())?;
    let paths: Vec<_> = doc
        .descendants()
        .filter(|n| n.has_tag_name("path"))
        .collect();
    for (k, expected) in [(0, 32), (1, 16), (2, 8), (3, 4)] {
        let count = paths
            .iter()
            .filter(|n| n.attribute("data-level") == Some(&k.to_string()))
            .count();
        ensure(count == expected, || format!("level {k}: {count} arcs"))?;
    }
    ensure(paths.len() == 60, || {
        format!("{} arcs in total", paths.len())
    })?;
    let view = Viewport::new(&spec);
    let zero = BigRational::zero();
    for node in &paths {
        let attr = |name| node.attribute(name).ok_or(format!("missing {name}"));
        let left: BinSeq = attr("data-left")?
            .parse()
            .map_err(|e: knaster::Error| e.to_string())?;
        let right: BinSeq = attr("data-right")?
            .parse()
            .map_err(|e: knaster::Error| e.to_string())?;
        let nums: Vec<f64> = attr("d")?
            .split_whitespace()
            .filter(|t| !matches!(*t, "M" | "A"))
            .map(|t| t.parse::<f64>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        let (lx, ly) = view.map_exact(embed(&left).value(), &zero);
        let (rx, ry) = view.map_exact(embed(&right).value(), &zero);
        let near = |a: f64, b: f64| (a - b).abs() <= 0.5;
        ensure(
            near(nums[0], lx) && near(nums[1], ly) && near(nums[7], rx) && near(nums[8], ry),
            || format!("{left} -- {right}: endpoints off"),
        )?;
    }
    Ok(())
}

fn cli(args: &[String]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("knaster".to_string()).chain(args.iter().cloned());
    let code = knaster::cli::run(argv, &mut out, &mut err);
    if code != 0 {
        return Err(format!(
            "{args:?} exited {code}: {}",
            String::from_utf8_lossy(&err)
        ));
    }
    String::from_utf8(out).map_err(|e| e.to_string())
}

fn round_trips() -> Outcome {
    let mut r = rng(8);
    for i in 0..1_000 {
        let s = random_seq(&mut r, 12, 12);
        let p = embed(&s);
        ensure(unembed(p.value()).as_ref() == Some(&s), || {
            format!("{s}: unembed∘embed")
        })?;

        let printed = cli(&["unembed".into(), p.to_string()])?;
        let back: BinSeq = printed
            .trim()
            .parse()
            .map_err(|e: knaster::Error| e.to_string())?;
        ensure(back == s, || format!("{s}: CLI printed {printed:?}"))?;
        if i < 100 {
            let json = cli(&["path".into(), s.to_string(), s.complement().to_string()])?;
            let w: PathWitness = serde_json::from_str(&json).map_err(|e| e.to_string())?;
            ensure(w.from == s && w.to == s.complement() && verify(&w), || {
                format!("{s}: path JSON")
            })?;
        }
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "centers x_k exact",
            budget: Duration::from_secs(1),
            run: centers,
        },
        Criterion {
            id: 2,
            name: "embedding closed form, complement, hat sum",
            budget: Duration::from_secs(5),
            run: embedding,
        },
        Criterion {
            id: 3,
            name: "worked example chain and BFS optimality",
            budget: Duration::from_secs(1),
            run: worked_example,
        },
        Criterion {
            id: 4,
            name: "theorem check N=2..6",
            budget: Duration::from_secs(30),
            run: theorem_at_desk_scale,
        },
        Criterion {
            id: 5,
            name: "witness suite, 10k pairs",
            budget: Duration::from_secs(60),
            run: witness_suite,
        },
        Criterion {
            id: 6,
            name: "interleave reduction, 1k pairs",
            budget: Duration::from_secs(5),
            run: reduction,
        },
        Criterion {
            id: 7,
            name: "render depth 5 levels 3",
            budget: Duration::from_secs(2),
            run: render_counts,
        },
        Criterion {
            id: 8,
            name: "unembed and CLI round trips",
            budget: Duration::from_secs(5),
            run: round_trips,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= c.budget, || {
                format!("took {elapsed:.2?}, budget {:?}", c.budget)
            })
        });
        match outcome {
            Ok(()) => println!("PASS [{}] {} ({elapsed:.2?})", c.id, c.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL [{}] {}: {msg}", c.id, c.name);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
