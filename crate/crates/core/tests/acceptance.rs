//! Acceptance gate: one line per criterion, exit status 1 if any fails.
//!
//! Every criterion is computed through the public library API and compared
//! with an independent route: the test-local uniserial oracle in `common`,
//! the other engine, or a hand-derived closed value.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use domdimlab::cli::suites::gendo_corpus;
use domdimlab::exactmath::FieldSpec;
use domdimlab::homology::{
    check_ideal_rigidity, delta, domdim, endomorphism_algebra, is_isomorphic,
    nakayama_indecomposables, phi, regular_bimodule, syzygy, syzygy_dims, Representation,
    Resolution,
};
use domdimlab::nakayama::{cyclic_series, gendo_family, BoundedValue, NakAlgebra, NakModule};
use domdimlab::quivalg::{nakayama_to_table, preset, AlgebraTable, Decision, SearchBudget};
use domdimlab::rigidity::{
    is_k_rigid_nakayama, o_k, verify_extsym_bound, verify_main_inequality, GendoEvidence,
    NakayamaOracle, TableOracle, Verdict,
};

use common::{hh1_truncated, kupisch_corpus, Cyclic, Uni};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(x: impl std::fmt::Display) -> String {
    x.to_string()
}

fn uni(m: NakModule) -> Uni {
    (m.vertex, m.length)
}

fn table(a: &NakAlgebra, p: u64) -> Result<Arc<AlgebraTable>, String> {
    Ok(Arc::new(
        nakayama_to_table(a, FieldSpec::Prime(p)).map_err(e)?,
    ))
}

/// Runs `f`, failing if its primary computation exceeded `budget`.
fn timed(
    budget: Option<Duration>,
    f: impl FnOnce() -> Result<(String, Duration), String>,
) -> Outcome {
    let (detail, spent) = f()?;
    if let Some(b) = budget {
        ensure(spent <= b, || format!("took {spent:?}, budget {b:?}"))?;
    }
    Ok(format!("{detail} [{:.3}s]", spent.as_secs_f64()))
}

fn criterion_1() -> Outcome {
    timed(None, || {
        let mut worst = Duration::ZERO;
        for n in 2..=8 {
            let start = Instant::now();
            let d = gendo_family(n).domdim(64);
            worst = worst.max(start.elapsed());
            ensure(d == BoundedValue::Finite(2 * n - 2), || {
                format!("n = {n}: domdim {d}")
            })?;
            ensure(worst < Duration::from_secs(1), || {
                format!("n = {n} too slow")
            })?;
            if n <= 5 {
                // Linear-algebra route on the bridged table.
                let linear = domdim(&table(&gendo_family(n), 2)?, 64).map_err(e)?;
                ensure(linear == d, || {
                    format!("n = {n}: linear engine gives {linear}")
                })?;
            }
        }
        Ok((
            "domdim = 2n-2 for n = 2..8, linear engine agrees for n <= 5".into(),
            worst,
        ))
    })
}

fn criterion_2() -> Outcome {
    timed(Some(Duration::from_secs(1)), || {
        let a = NakAlgebra::cycle(&[5, 6, 6, 6, 6]).map_err(e)?;
        let start = Instant::now();
        let mut modules = a.dual_regular();
        modules.extend(
            a.dual_regular()
                .into_iter()
                .filter_map(|i| a.syzygy_power(i, 4)),
        );
        let rigid = is_k_rigid_nakayama(&a, &modules, 2).map_err(e)?;
        let spent = start.elapsed();
        ensure(rigid, || "library says not 2-rigid".into())?;
        let c = Cyclic::new(a.kupisch());
        let injectives = c.injectives();
        let mut reference: Vec<Uni> = injectives.clone();
        for i in injectives {
            let mut x = Some(i);
            for _ in 0..4 {
                x = x.and_then(|m| c.omega(m));
            }
            reference.extend(x);
        }
        let mut lib: Vec<Uni> = modules.iter().map(|&m| uni(m)).collect();
        lib.sort();
        let mut sorted = reference.clone();
        sorted.sort();
        ensure(lib == sorted, || format!("summands {lib:?} vs {sorted:?}"))?;
        ensure(c.is_rigid(&reference, 2), || {
            "reference oracle says not 2-rigid".into()
        })?;
        ensure(!c.is_rigid(&reference, 3), || "unexpectedly 3-rigid".into())?;
        Ok((
            format!("{} summands, 2-rigid in both oracles", lib.len()),
            spent,
        ))
    })
}

fn criterion_3() -> Outcome {
    timed(None, || {
        let start = Instant::now();
        let mut count = 0;
        for n in 2..=5 {
            let algebras = cyclic_series(n, 10);
            let reference = kupisch_corpus(n, 10);
            ensure(algebras.len() == reference.len(), || {
                format!("n = {n}: {} vs {} series", algebras.len(), reference.len())
            })?;
            for a in algebras {
                let c = Cyclic::new(a.kupisch());
                let closed: Vec<Uni> = a
                    .one_rigid_indecomposables()
                    .map_err(e)?
                    .into_iter()
                    .map(uni)
                    .collect();
                let brute: Vec<Uni> = c
                    .modules()
                    .into_iter()
                    .filter(|&m| c.ext1(m, m) == 0)
                    .collect();
                ensure(closed == brute, || {
                    format!("{}: {closed:?} vs {brute:?}", a.label())
                })?;
                count += 1;
            }
        }
        Ok((format!("{count} algebras agree"), start.elapsed()))
    })
}

fn criterion_4() -> Outcome {
    timed(None, || {
        let start = Instant::now();
        let mut count = 0;
        for n in 2..=5 {
            for a in cyclic_series(n, 10) {
                let r = o_k(&NakayamaOracle::new(a.clone()), 1).map_err(e)?;
                ensure(r.o_k <= n * (n - 1) + n * n, || {
                    format!("{}: o_1 = {}", a.label(), r.o_k)
                })?;
                if n <= 3 && a.kupisch().iter().all(|&c| c <= 6) {
                    let brute = Cyclic::new(a.kupisch()).max_rigid(1);
                    ensure(brute == r.o_k, || {
                        format!("{}: o_1 {} vs exhaustive {brute}", a.label(), r.o_k)
                    })?;
                }
                count += 1;
            }
        }
        let two = Cyclic::new(&[2, 2]);
        let ms = two.modules();
        let best = (0u32..1 << ms.len())
            .filter(|mask| {
                let s: Vec<Uni> = (0..ms.len())
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| ms[b])
                    .collect();
                two.is_rigid(&s, 1)
            })
            .map(u32::count_ones)
            .max()
            .unwrap_or(0);
        let lib = o_k(
            &NakayamaOracle::new(NakAlgebra::cycle(&[2, 2]).map_err(e)?),
            1,
        )
        .map_err(e)?;
        ensure(best == 3 && lib.o_k == 3, || {
            format!("o_1(2,2): subsets {best}, library {}", lib.o_k)
        })?;
        Ok((
            format!("bound holds on {count} algebras; o_1(2,2) = 3"),
            start.elapsed(),
        ))
    })
}

fn criterion_5() -> Outcome {
    timed(None, || {
        let start = Instant::now();
        let corpus = gendo_corpus()?;
        let mut checked = 0;
        for (a, decision) in &corpus {
            if *decision != Decision::True {
                continue;
            }
            ensure(!a.is_selfinjective(), || {
                format!("{} is selfinjective", a.label())
            })?;
            let linear = domdim(&table(a, 2)?, 64).map_err(e)?;
            let dd = linear
                .finite()
                .ok_or_else(|| format!("{}: domdim {linear}", a.label()))?;
            let w = a.n();
            for k in 1..=2 {
                let r = verify_main_inequality(a, k, 64, GendoEvidence::Tested(*decision))
                    .map_err(e)?;
                let ok = Cyclic::new(a.kupisch()).max_rigid(k);
                ensure(r.o_k == ok && r.domdim == dd, || {
                    format!(
                        "{} k={k}: report ({}, {}) vs reference ({ok}, {dd})",
                        a.label(),
                        r.o_k,
                        r.domdim
                    )
                })?;
                let lhs = (ok + 2 - w) * (k + 2) - 1;
                ensure(r.verdict == Verdict::Holds && lhs >= dd, || {
                    format!("FALSIFICATION {} k={k}: {lhs} < {dd}", a.label())
                })?;
                checked += 1;
            }
        }
        for n in 2..=5 {
            ensure(
                corpus
                    .iter()
                    .any(|(a, d)| *a == gendo_family(n) && *d == Decision::True),
                || format!("family member n = {n} not confirmed"),
            )?;
        }
        ensure(checked > 0, || "no confirmed instances".into())?;
        Ok((
            format!("{checked} (algebra, k) instances hold"),
            start.elapsed(),
        ))
    })
}

fn criterion_6() -> Outcome {
    timed(None, || {
        let mut worst = Duration::ZERO;
        let mut out = Vec::new();
        for (s, kupisch) in [(1usize, vec![3usize]), (2, vec![3, 3]), (3, vec![4, 4, 4])] {
            let a = NakAlgebra::cycle(&kupisch).map_err(e)?;
            let start = Instant::now();
            let d = a.delta(12);
            worst = worst.max(start.elapsed());
            ensure(
                a.is_symmetric() && d == BoundedValue::Finite(2 * s - 1),
                || format!("{}: delta {d}", a.label()),
            )?;
            let t = table(&a, 2)?;
            let witnesses: Vec<Representation> = nakayama_indecomposables(&t).map_err(e)?;
            let linear = delta(&t, 12, &witnesses, true).map_err(e)?;
            ensure(linear.value == d && linear.certified, || {
                format!("{}: linear delta {}", a.label(), linear.value)
            })?;
            out.push(format!("{}={d}", a.label()));
        }
        ensure(worst < Duration::from_secs(1), || "too slow".into())?;
        Ok((out.join(", "), worst))
    })
}

fn criterion_7() -> Outcome {
    timed(None, || {
        let simple = |name: &str| -> Result<Representation, String> {
            let a = Arc::new(preset(name).map_err(e)?);
            Representation::simple(&a, 0).map_err(e)
        };
        let mut worst = Duration::ZERO;

        let start = Instant::now();
        let s = simple("hopf-a5-f2")?;
        let hopf = syzygy_dims(&s, 4).map_err(e)?;
        worst = worst.max(start.elapsed());
        ensure(s.algebra().dim() == 8, || {
            "hopf preset is not 8-dimensional".into()
        })?;
        ensure(hopf == [7, 9, 7, 9], || format!("hopf {hopf:?}"))?;
        // dim Ω(M) = dim P(top M) - dim M over a local algebra.
        let mut m = s.clone();
        for &expect in &hopf {
            let next = 8 * m.top().dim() - m.dim();
            ensure(next == expect, || format!("bookkeeping {next} vs {expect}"))?;
            m = syzygy(&m).map_err(e)?;
        }

        let start = Instant::now();
        let dihedral = syzygy_dims(&simple("dihedral8-f2")?, 4).map_err(e)?;
        worst = worst.max(start.elapsed());
        ensure(dihedral[3] == 17, || format!("dihedral {dihedral:?}"))?;

        let start = Instant::now();
        let q = simple("quaternion8-f2")?;
        let mut omega = q.clone();
        for _ in 0..4 {
            omega = syzygy(&omega).map_err(e)?;
        }
        let periodic = is_isomorphic(&omega, &q, &SearchBudget::default()).map_err(e)?;
        worst = worst.max(start.elapsed());
        ensure(periodic == Decision::True, || {
            format!("quaternion periodicity {periodic}")
        })?;
        ensure(worst < Duration::from_secs(1), || "too slow".into())?;
        Ok((
            format!("hopf {hopf:?}, dihedral {dihedral:?}, quaternion 4-periodic"),
            worst,
        ))
    })
}

fn criterion_8() -> Outcome {
    timed(None, || {
        let start = Instant::now();
        let mut instances = 0;
        for n in 1..=3 {
            for a in cyclic_series(n, 6) {
                let mods = a.indecomposables();
                for p in [2, 3] {
                    let t = table(&a, p)?;
                    let reps = nakayama_indecomposables(&t).map_err(e)?;
                    ensure(reps.len() == mods.len(), || {
                        format!("{}: indecomposable count", a.label())
                    })?;
                    for (x, &mx) in reps.iter().zip(&mods) {
                        let res = Resolution::with_length(x, 5).map_err(e)?;
                        for (y, &my) in reps.iter().zip(&mods) {
                            let linear = res.ext_dims(y, 4).map_err(e)?.dims;
                            let closed: Vec<usize> = std::iter::once(a.dim_hom(mx, my))
                                .chain((1..=4).map(|s| a.dim_ext(s, mx, my)))
                                .collect();
                            ensure(linear == closed, || {
                                format!("{} F{p} ({mx}, {my}): {linear:?} vs {closed:?}", a.label())
                            })?;
                            instances += 1;
                        }
                    }
                }
            }
        }
        Ok((
            format!("{instances} (algebra, field, pair) instances agree"),
            start.elapsed(),
        ))
    })
}

fn criterion_9() -> Outcome {
    timed(Some(Duration::from_secs(5)), || {
        let start = Instant::now();
        let b = NakAlgebra::cycle(&[3, 3]).map_err(e)?;
        let t = table(&b, 2)?;
        let mut summands: Vec<Representation> = (0..2)
            .map(|v| Representation::projective(&t, v))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        summands.push(Representation::simple(&t, 0).map_err(e)?);
        let end = Arc::new(endomorphism_algebra(&summands).map_err(e)?);
        let dd = domdim(&end, 64).map_err(e)?;
        let refs: Vec<&Representation> = summands.iter().collect();
        let phi_linear = phi(&Representation::direct_sum(&refs).map_err(e)?, 64).map_err(e)?;
        let phi_closed = b
            .phi(&[b.projective(0), b.projective(1), b.simple(0)], 64)
            .map_err(e)?;
        let spent = start.elapsed();
        let parts = [b.projective(0), b.projective(1), b.simple(0)];
        let hom_total: usize = parts
            .iter()
            .flat_map(|&x| parts.iter().map(move |&y| (x, y)))
            .map(|(x, y)| Cyclic::new(b.kupisch()).hom(uni(x), uni(y)))
            .sum();
        ensure(end.dim() == hom_total, || {
            format!("End has dimension {}, expected {hom_total}", end.dim())
        })?;
        ensure(
            dd == BoundedValue::Finite(4)
                && phi_linear == BoundedValue::Finite(3)
                && phi_closed == phi_linear,
            || format!("domdim {dd}, phi {phi_linear} / {phi_closed}"),
        )?;
        Ok((
            "domdim End(B + S_0) = 4 = phi + 1 by both routes".into(),
            spent,
        ))
    })
}

fn criterion_10() -> Outcome {
    timed(Some(Duration::from_secs(5)), || {
        let start = Instant::now();
        let budget = SearchBudget::default();
        for n in 3..=6 {
            let a = Arc::new(preset(&format!("truncated-poly({n},Q)")).map_err(e)?);
            let radical = a.radical().map_err(e)?.powers.clone();
            for k in 1..n {
                let r = check_ideal_rigidity(&a, &radical[k - 1], &budget).map_err(e)?;
                // J^k is uniserial of length n-k; the reference oracle gives min(k, n-k).
                let c = Cyclic::new(&[n]);
                let reference = c.ext1((0, n - k), (0, n - k));
                ensure(r.ext1 > 0 && r.ext1 == reference && r.holds, || {
                    format!("n={n} k={k}: ext1 {} vs {reference}", r.ext1)
                })?;
            }
        }
        let a = preset("truncated-poly(3,F3)").map_err(e)?;
        let (_, bimodule) = regular_bimodule(&a).map_err(e)?;
        let ext1 = Resolution::with_length(&bimodule, 2)
            .and_then(|r| r.ext(&bimodule, 1))
            .map_err(e)?;
        let spent = start.elapsed();
        ensure(ext1 > 0 && ext1 == hh1_truncated(3, 3), || {
            format!("enveloping Ext^1 = {ext1}")
        })?;
        Ok((
            format!("all ideals non-rigid; enveloping Ext^1 = {ext1}"),
            spent,
        ))
    })
}

fn criterion_11() -> Outcome {
    timed(Some(Duration::from_secs(1)), || {
        let start = Instant::now();
        let a = Arc::new(preset("preproj-a2").map_err(e)?);
        let oracle = TableOracle::new(&a).map_err(e)?;
        let r = verify_extsym_bound(&oracle, 12).map_err(e)?;
        let spent = start.elapsed();
        ensure(
            r.ext1_symmetric
                && r.delta == BoundedValue::Finite(2)
                && r.o_1 == 3
                && r.simples == 2
                && r.bound == 3
                && r.verdict == Some(Verdict::Holds),
            || format!("{r:?}"),
        )?;
        // The preprojective algebra of A2 is the cyclic Nakayama algebra (2,2).
        ensure(a.dim() == 4, || "dimension".into())?;
        let c = Cyclic::new(&[2, 2]);
        let ms = c.modules();
        ensure(ms.len() == 4, || "indecomposable count".into())?;
        let symmetric = ms
            .iter()
            .all(|&x| ms.iter().all(|&y| c.ext1(x, y) == c.ext1(y, x)));
        let closed_delta = NakAlgebra::cycle(&[2, 2]).map_err(e)?.delta(12);
        ensure(
            symmetric && c.max_rigid(1) == 3 && closed_delta == r.delta,
            || {
                format!(
                    "reference: symmetric {symmetric}, o_1 {}, delta {closed_delta}",
                    c.max_rigid(1)
                )
            },
        )?;
        Ok((
            format!("Delta = {} <= o_1 + s - 2 = {}", r.delta, r.bound),
            spent,
        ))
    })
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("domdim of the gendo-symmetric family is 2n-2", criterion_1),
        (
            "D(A) + Omega^4 D(A) is 2-rigid over (5,6,6,6,6)",
            criterion_2,
        ),
        (
            "closed 1-rigidity criterion equals brute force",
            criterion_3,
        ),
        ("o_1 <= n(n-1) + n^2 and o_1(2,2) = 3", criterion_4),
        (
            "(o_k + 2 - w)(k + 2) - 1 >= domdim on gendo-symmetric instances",
            criterion_5,
        ),
        (
            "Delta = 2s - 1 for symmetric Nakayama algebras",
            criterion_6,
        ),
        ("syzygy fingerprints of the local presets", criterion_7),
        ("Hom and Ext agree between the two engines", criterion_8),
        ("domdim End(B + S_0) = phi + 1 = 4", criterion_9),
        (
            "ideals of truncated polynomial rings are not rigid",
            criterion_10,
        ),
        ("1-Extsymmetric bound for preprojective A2", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
