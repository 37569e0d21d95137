//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every comparison is exact.

use std::collections::HashSet;
use std::time::Instant;

use num_rational::BigRational;
use sbdw_core::absolute::{commutation_classes, enumerate_twords, positive_cluster_complex, reflection_name, HeapOrder, TChain};
use sbdw_core::cambrian::w_c_plus;
use sbdw_core::coxeter::perm::from_cycles;
use sbdw_core::coxeter::{parse_word, CoxeterElement, CoxeterSystem, Element, Reflection};
use sbdw_core::geometry::{base_point, certify_regular, cluster_sequence, delta_vertices, BasePointMode};
use sbdw_core::numfield::{Scalar, Vector};
use sbdw_core::sbdw::conjectures::conjecture_scan;
use sbdw_core::sbdw::report::certify_regularity;
use sbdw_core::sbdw::theorems::theorem_suite;
use sbdw_core::sbdw::{build_and_verify, enumerate_omega, jv_polynomial, jv_rhs, Context, DEFAULT_SUITE_CAP};

const CERTIFICATE_GROUPS: [&str; 11] = ["A2", "A3", "B2", "B3", "G2", "I2(5)", "I2(7)", "A4", "D4", "B4", "H3"];
const REGULAR_GROUPS: [&str; 4] = ["A2", "A3", "A4", "D4"];
const THEOREM_GROUPS: [(&str, u64); 5] = [("A2", 2), ("A3", 5), ("B3", 10), ("D4", 20), ("H3", 21)];
const CONJECTURE_GROUPS: [&str; 3] = ["A2", "A3", "B3"];
const SEEDS: [u64; 3] = [11, 23, 47];
const STABILITY_ATTEMPTS: usize = 20;
const STABILITY_SEED: u64 = 7;

type Outcome = Result<String, String>;

fn sys(label: &str) -> CoxeterSystem {
    CoxeterSystem::from_label(label).expect("known label")
}

fn cox(w: &CoxeterSystem, word: &str) -> CoxeterElement {
    w.coxeter_element(&parse_word(word).unwrap()).unwrap()
}

fn refl(w: &CoxeterSystem, cycles: &str) -> Reflection {
    w.reflection_of(from_cycles(w, cycles).unwrap()).unwrap()
}

fn chain(w: &CoxeterSystem, cycles: &[&str]) -> TChain {
    TChain::new(cycles.iter().map(|c| refl(w, c)).collect())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let w = sys("A2");
    let c = cox(&w, "s1s2");
    let e = w.identity();
    let s2 = w.simple(1);
    let pi1 = chain(&w, &["(1 2)", "(2 3)"]);
    let pi2 = chain(&w, &["(1 3)", "(1 2)"]);
    let pi3 = chain(&w, &["(2 3)", "(1 3)"]);
    let want: HashSet<(Element, TChain)> = HashSet::from([(e, pi1.clone()), (e, pi3), (s2, pi2), (s2, pi1)]);
    let omega = enumerate_omega(&w, &c);
    let got: HashSet<(Element, TChain)> = omega.iter().map(|p| (p.u, p.chain.clone())).collect();
    ensure(omega.len() == 4 && got == want, || format!("got {} cells", omega.len()))?;
    let ctx = Context::new(&w, &c).map_err(|e| e.to_string())?;
    let tri = build_and_verify(&ctx, &w.rho()).map_err(|e| e.to_string())?;
    ensure(tri.cells.len() == 4 && tri.certificates.passed(), || "certificates".into())?;
    Ok("4 cells (e,pi1) (e,pi3) (s2,pi2) (s2,pi1)".into())
}

fn from_r4(v: [i64; 4]) -> Vector {
    (0..3).map(|i| Scalar::from_int(v[i] - v[i + 1])).collect()
}

fn criterion_2() -> Outcome {
    let w = sys("A3");
    let c = cox(&w, "s1s2s3");
    let mut plus = w_c_plus(&w, &c);
    plus.sort();
    let mut want: Vec<Element> = ["", "2", "3", "23", "32", "232"]
        .iter()
        .map(|s| w.element_of_word(&parse_word(s).unwrap()).unwrap())
        .collect();
    want.sort();
    ensure(plus == want, || "W_c^+ differs".into())?;

    let table = [
        ("(3 4)", [1, 1, 1, 0]),
        ("(2 4)", [1, 1, 0, 0]),
        ("(1 4)", [1, 0, 0, 0]),
        ("(2 3)", [1, 1, 0, 1]),
        ("(1 3)", [1, 0, 0, 1]),
        ("(1 2)", [1, 0, 1, 1]),
    ];
    let seq = cluster_sequence(&w, &c);
    let deltas = delta_vertices(&w, &c).map_err(|e| e.to_string())?;
    for (k, (cyc, v)) in table.iter().enumerate() {
        let t = refl(&w, cyc);
        ensure(seq[k] == t, || format!("sequence position {k}"))?;
        ensure(deltas[t.index()] == from_r4(*v), || format!("delta of {cyc}"))?;
    }

    let heap = HeapOrder::new(&w, &c);
    let chains = enumerate_twords(&w, c.element);
    let cc = positive_cluster_complex(&w, &c, &heap, &chains);
    let faces = vec![vec![1, 2, 3], vec![1, 3, 6], vec![2, 3, 4], vec![3, 4, 5], vec![3, 5, 6]];
    ensure(cc.faces == faces, || format!("cluster faces {:?}", cc.faces))?;
    let classes = commutation_classes(&heap, &chains);
    ensure(classes.len() == 12, || format!("{} commutation classes", classes.len()))?;
    let names: Vec<String> = seq.iter().map(|&t| reflection_name(&w, t)).collect();
    Ok(format!("|W_c^+|=6, sequence {}, 5 clusters, 12 classes", names.join(" ")))
}

/// Combinatorial data of a triangulation at a given base point.
type Shape = (Vec<Vec<Element>>, sbdw_core::sbdw::FacetSignature);

fn certify_at(ctx: &Context, y: &[Scalar]) -> Result<Shape, String> {
    let tri = build_and_verify(ctx, y).map_err(|e| e.to_string())?;
    ensure(tri.certificates.passed(), || {
        format!("{} c={}: {:?}", ctx.w.label(), ctx.c.word_string(), tri.certificates.failures)
    })?;
    Ok((tri.cell_elements(), tri.facet_signature()))
}

fn criterion_3() -> Outcome {
    let mut runs = 0;
    let mut cells = 0;
    for label in CERTIFICATE_GROUPS {
        let w = sys(label);
        for c in w.standard_coxeter_elements() {
            let ctx = Context::new(&w, &c).map_err(|e| e.to_string())?;
            cells += certify_at(&ctx, &w.rho())?.0.len();
            runs += 1;
        }
    }
    Ok(format!("{runs} (W,c) pairs, {cells} cells, volumes equal"))
}

fn criterion_4() -> Outcome {
    let mut runs = 0;
    for label in REGULAR_GROUPS {
        let w = sys(label);
        for c in w.standard_coxeter_elements() {
            let ctx = Context::new(&w, &c).map_err(|e| e.to_string())?;
            let out = certify_regularity(&ctx, STABILITY_ATTEMPTS, STABILITY_SEED).map_err(|e| e.to_string())?;
            ensure(out.section.passed(), || format!("{label} c={}: {:?}", c.word_string(), out.section))?;
            let st = out.stability.expect("stability found");
            let tri = out.triangulation.expect("triangulation built");
            let again = certify_regular(&w, &tri.cell_elements(), &st.y, &st.gamma).map_err(|e| e.to_string())?;
            ensure(again.is_ok(), || format!("{label} c={}: recheck failed", c.word_string()))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} (W,c) pairs certified regular"))
}

fn criterion_5() -> Outcome {
    let mut runs = 0;
    for label in CERTIFICATE_GROUPS {
        let w = sys(label);
        let rhs = jv_rhs(&w);
        for c in w.standard_coxeter_elements() {
            let chains = enumerate_twords(&w, c.element);
            let jv = jv_polynomial(&w, &chains);
            let n = jv.lhs.len().max(rhs.len());
            let lhs: Vec<BigRational> = (0..n)
                .map(|k| BigRational::from_integer(jv.lhs.get(k).copied().unwrap_or(0).into()))
                .collect();
            let rhs_padded: Vec<BigRational> = (0..n)
                .map(|k| rhs.get(k).cloned().unwrap_or_else(|| BigRational::from_integer(0.into())))
                .collect();
            ensure(jv.equal && lhs == rhs_padded, || format!("{label} c={}: {:?}", c.word_string(), jv.lhs))?;
            runs += 1;
        }
    }
    let w = sys("A2");
    let jv = jv_polynomial(&w, &enumerate_twords(&w, cox(&w, "s1s2").element));
    let trimmed: Vec<u64> = jv.lhs.iter().copied().rev().skip_while(|&x| x == 0).collect::<Vec<_>>().into_iter().rev().collect();
    ensure(trimmed == [2, 1], || format!("A2 gives {:?}", jv.lhs))?;
    Ok(format!("{runs} (W,c) pairs, A2 = 2+q"))
}

fn criterion_6() -> Outcome {
    let mut runs = 0;
    for (label, cat) in THEOREM_GROUPS {
        let w = sys(label);
        for c in w.standard_coxeter_elements() {
            let ctx = Context::new(&w, &c).map_err(|e| e.to_string())?;
            let rep = theorem_suite(&ctx, DEFAULT_SUITE_CAP).map_err(|e| e.to_string())?;
            let failed: Vec<_> = rep.checks.iter().filter(|k| !k.passed).collect();
            ensure(rep.checks.len() == 6 && failed.is_empty(), || format!("{label} c={}: {failed:?}", c.word_string()))?;
            ensure(rep.class_count as u64 == cat && rep.cat_plus == cat, || {
                format!("{label}: {} classes, expected {cat}", rep.class_count)
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} (W,c) pairs, class counts 2 5 10 20 21"))
}

fn criterion_7() -> Outcome {
    let mut runs = 0;
    for label in CERTIFICATE_GROUPS {
        let w = sys(label);
        for c in w.standard_coxeter_elements() {
            let ctx = Context::new(&w, &c).map_err(|e| e.to_string())?;
            let reference = certify_at(&ctx, &w.rho())?;
            let mut points = HashSet::new();
            for seed in SEEDS {
                let y = base_point(&w, BasePointMode::Seeded(seed));
                ensure(y.iter().all(|x| x.as_rational().is_some()), || "seeded point is not rational".into())?;
                points.insert(y.clone());
                let shape = certify_at(&ctx, &y)?;
                ensure(shape == reference, || format!("{label} c={} seed {seed}: combinatorics differ", c.word_string()))?;
            }
            ensure(points.len() == SEEDS.len(), || "seeded points coincide".into())?;
            runs += 1;
        }
    }
    Ok(format!("{runs} (W,c) pairs x {} seeds, identical cells and facets", SEEDS.len()))
}

fn criterion_8() -> Outcome {
    let mut runs = 0;
    for label in CONJECTURE_GROUPS {
        let w = sys(label);
        for c in w.standard_coxeter_elements() {
            let ctx = Context::new(&w, &c).map_err(|e| e.to_string())?;
            let tri = build_and_verify(&ctx, &w.rho()).map_err(|e| e.to_string())?;
            let rep = conjecture_scan(&ctx, &tri, DEFAULT_SUITE_CAP).map_err(|e| e.to_string())?;
            let json = serde_json::to_string(&rep).map_err(|e| e.to_string())?;
            ensure(rep.all_pass(), || format!("{label} c={}: {json}", c.word_string()))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} (W,c) pairs, all five scans pass"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("S3 golden cells", criterion_1),
        ("S4 goldens", criterion_2),
        ("triangulation certificates", criterion_3),
        ("regularity", criterion_4),
        ("chain enumeration identity", criterion_5),
        ("theorem suite", criterion_6),
        ("base point robustness", criterion_7),
        ("conjecture scans", criterion_8),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{secs:.2}s]", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL {name} ({detail}) [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
