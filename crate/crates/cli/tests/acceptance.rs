use std::process::Command;

use horochow::catalog::{builtin, degrees, find_semisimple, reconstruct, run_suite, SuiteOptions, Variety};
use horochow::rational::{fmt_q, int};
use horochow::schubert::spinor_mult;
use horochow::symfunc::{lr_product, pq_polynomial, pq_product};
use horochow::{CheckReport, LinComb, PQFamily, Partition, Poly, SchurExpansion, SpinorCycle, StrictPartition};

type Outcome = Result<String, String>;

fn cli(args: &[&str]) -> Result<String, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_horochow")).args(args).output().map_err(|e| e.to_string())?;
    if !o.status.success() {
        return Err(format!("horochow {} exited with {:?}", args.join(" "), o.status.code()));
    }
    String::from_utf8(o.stdout).map_err(|e| e.to_string())
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// All checks whose id starts with `prefix` pass; returns how many there were.
fn all_pass(report: &CheckReport, prefix: &str) -> Result<usize, String> {
    let selected: Vec<_> = report.checks().iter().filter(|c| c.id.starts_with(prefix)).collect();
    ensure(!selected.is_empty(), format!("no checks under {prefix}"))?;
    if let Some(bad) = selected.iter().find(|c| !c.passed()) {
        return Err(bad.to_string());
    }
    Ok(selected.len())
}

fn passes(report: &CheckReport, id: &str) -> Result<(), String> {
    let c = report.get(id).ok_or_else(|| format!("missing check {id}"))?;
    ensure(c.passed(), c.to_string())
}

fn fundamental_class() -> Outcome {
    let out = cli(&["fundamental-class", "g2"])?;
    let lines: Vec<&str> = out.lines().collect();
    ensure(lines.last() == Some(&"2σ[4,1] + 2σ[3,2]"), format!("final line {:?}", lines.last()))?;
    ensure(lines.iter().any(|l| l.ends_with("5:0 4,1:2 3,2:4")), "evaluations differ from 0, 2, 4")?;
    Ok("2σ[4,1] + 2σ[3,2], evaluations 0, 2, 4".into())
}

fn g2_ring() -> Outcome {
    let v = Variety::builtin("g2").map_err(|e| e.to_string())?;
    let m = v.model(false).map_err(|e| e.to_string())?;
    let hil = m.ring.hilbert();
    ensure(hil == [1, 1, 2, 2, 2, 2, 1, 1], format!("Hilbert {hil:?}"))?;
    ensure(hil.iter().sum::<usize>() == 12, "rank is not 12")?;
    let (paths, ring) = degrees(&v, &m).map_err(|e| e.to_string())?;
    let expected = [56, 56, 38, 10, 4, 1, 18, 18, 6, 3, 1, 1].map(int);
    ensure(paths == expected, format!("path counts {paths:?}"))?;
    ensure(ring == expected, format!("ring degrees {ring:?}"))?;
    Ok("Hilbert (1,1,2,2,2,2,1,1), degrees (56,56,38,10,4,1;18,18,6,3,1,1) by both routes".into())
}

fn g2_tables() -> Outcome {
    let r = run_suite(&builtin("g2").map_err(|e| e.to_string())?, SuiteOptions::classical());
    let first = all_pass(&r, "g2.table.first.")?;
    let dual = all_pass(&r, "g2.table.dual.")?;
    passes(&r, "g2.table.first.t'3*t'3")?;
    passes(&r, "g2.table.dual.s'3*t3")?;
    let printed = cli(&["table", "g2", "--basis", "dual"])?;
    ensure(printed.lines().any(|l| l == "σ'3·τ3 = -τ6"), "dual table lacks σ'3·τ3 = -τ6")?;
    Ok(format!("{first} first-basis and {dual} dual-basis products, (τ'3)² = 2σ6"))
}

fn g2_duals() -> Outcome {
    let r = run_suite(&builtin("g2").map_err(|e| e.to_string())?, SuiteOptions::classical());
    let n = all_pass(&r, "g2.dual.formula.")?;
    ensure(n == 10, format!("{n} formulas"))?;
    passes(&r, "g2.dual.formula.t4")?;
    all_pass(&r, "g2.dual.edge.")?;
    Ok("ten dual-basis formulas, including τ4 = 2τ'4 − σ4".into())
}

fn g2_quantum() -> Outcome {
    let spec = builtin("g2").map_err(|e| e.to_string())?;
    ensure(
        spec.relations.quantum == ["3*s^2 - h^2*s + q", "28*h^4*s - 9*h^6 + 8*q*(h^2 + 3*s)"],
        format!("quantum relations {:?}", spec.relations.quantum),
    )?;
    let r = run_suite(&spec, SuiteOptions::quantum());
    let chevalley = all_pass(&r, "g2.quantum.chevalley.")?;
    ensure(chevalley == 11, format!("{chevalley} Chevalley lines"))?;
    let s7 = r.get("g2.quantum.chevalley.s7").ok_or("missing σ7 line")?;
    ensure(s7.summary == "σ7·h = q·τ'4 + 2q^2", s7.summary.clone())?;
    all_pass(&r, "g2.quantum.giambelli.")?;
    passes(&r, "g2.quantum.relation.h6")?;
    let table = all_pass(&r, "g2.quantum.table.sigma.")?;
    ensure(table == 10, format!("{table} σ-table entries"))?;
    passes(&r, "g2.quantum.degeneration")?;
    Ok("11 quantum Chevalley lines, Giambelli, h⁶ identity, 10-entry σ-table".into())
}

fn g2_semisimple() -> Outcome {
    let v = Variety::builtin("g2").map_err(|e| e.to_string())?;
    let m = v.model(true).map_err(|e| e.to_string())?;
    let g = v.spec().golden.semisimple.clone().ok_or("no semisimplicity data")?;
    let res = find_semisimple(&v, &m, &int(1), &g.candidates).map_err(|e| e.to_string())?;
    let c = &res.certificate;
    let degree = c.minimal_polynomial.degree();
    ensure(degree == Some(12), format!("minimal polynomial degree {degree:?}"))?;
    ensure(c.squarefree && c.generates && c.verified, format!("certificate {c:?}"))?;
    Ok(format!("x = {} at q = {}: squarefree minimal polynomial of degree 12", res.candidate, fmt_q(&res.q)))
}

fn spin7_classical() -> Outcome {
    let r = run_suite(&builtin("spin7").map_err(|e| e.to_string())?, SuiteOptions::classical());
    passes(&r, "spin7.ring.hilbert")?;
    let v = Variety::builtin("spin7").map_err(|e| e.to_string())?;
    let hil = v.ring(false).map_err(|e| e.to_string())?.hilbert();
    ensure(hil == [1, 1, 1, 2, 2, 2, 2, 1, 1, 1], format!("Hilbert {hil:?}"))?;
    ensure(hil.iter().sum::<usize>() == 14, "Euler number is not 14")?;
    all_pass(&r, "spin7.giambelli.")?;
    passes(&r, "spin7.relation.htau2")?;
    let tau = all_pass(&r, "spin7.table.tau.")?;
    let missing = all_pass(&r, "spin7.table.missing.")?;
    Ok(format!("Hilbert (1,1,1,2,2,2,2,1,1,1), Euler 14, hτ² = 0, {tau} + {missing} table entries"))
}

fn spinor() -> Outcome {
    let g = |s: &str| SpinorCycle::class(s.parse().unwrap()).unwrap();
    let sq = spinor_mult(&g("3"), &g("3"));
    ensure(sq == spinor_mult(&g("2,1"), &g("2,1")).scale(&int(2)), "γ3² ≠ 2γ21²")?;
    let top = g("1").pow(10);
    ensure(top == g("4,3,2,1").scale(&int(12)), format!("γ1¹⁰ = {top}"))?;
    let r = run_suite(&builtin("spin7").map_err(|e| e.to_string())?, SuiteOptions::classical());
    all_pass(&r, "spin7.spinor.")?;
    passes(&r, "spin7.spinor.degree")?;
    passes(&r, "spin7.spinor.relation.identity")?;
    passes(&r, "spin7.spinor.relation.vanishes")?;
    Ok("γ3² = 2γ21², γ1¹⁰ = 12γ4321 = ∫h⁹, restricted relation is −R6/4 = 0".into())
}

fn spin7_quantum() -> Outcome {
    let r = run_suite(&builtin("spin7").map_err(|e| e.to_string())?, SuiteOptions::quantum());
    passes(&r, "spin7.quantum.corrections")?;
    for v in ["t7", "t8", "t9"] {
        passes(&r, &format!("spin7.quantum.giambelli.{v}"))?;
    }
    let t7 = r.get("spin7.quantum.giambelli.t7").unwrap();
    ensure(t7.summary == "τ7 = h^7/12 - 5/12·q", t7.summary.clone())?;
    let n = all_pass(&r, "spin7.quantum.table.tau.")?;
    ensure(n == 9, format!("{n} τ-table entries"))?;
    all_pass(&r, "spin7.quantum.chevalley.")?;
    Ok("four q-corrected Chevalley lines, corrected τ7, τ8, τ9, 9-entry τ-table".into())
}

fn properties() -> Outcome {
    let parts: Vec<Partition> = (0..=4).flat_map(Partition::all_of_weight).collect();
    let single = |l: &Partition| -> SchurExpansion { LinComb::single(l.clone(), int(1)) };
    let mul = |x: &SchurExpansion, y: &SchurExpansion| {
        let mut out = SchurExpansion::new();
        for (l, a) in x.iter() {
            for (m, b) in y.iter() {
                out.add_scaled(&lr_product(l, m), &(a * b));
            }
        }
        out
    };
    for a in &parts {
        for b in &parts {
            ensure(lr_product(a, b) == lr_product(b, a), format!("LR not symmetric at {a} {b}"))?;
        }
    }
    let small: Vec<Partition> = (0..=3).flat_map(Partition::all_of_weight).collect();
    for a in &small {
        for b in &small {
            for c in parts.iter().filter(|c| c.weight() + a.weight() + b.weight() <= 8) {
                let l = mul(&mul(&single(a), &single(b)), &single(c));
                let r = mul(&single(a), &mul(&single(b), &single(c)));
                ensure(l == r, format!("LR not associative at {a} {b} {c}"))?;
            }
        }
    }
    let strict: Vec<StrictPartition> = (0..=4).flat_map(StrictPartition::all_of_weight).collect();
    for a in &strict {
        for b in &strict {
            let m = (a.len() + b.len()).max(1);
            let lhs = pq_polynomial(a, m, PQFamily::P).poly() * pq_polynomial(b, m, PQFamily::P).poly();
            let mut rhs = Poly::zero(m);
            for (nu, c) in pq_product(a, b, PQFamily::P).terms.iter() {
                rhs = &rhs + &pq_polynomial(nu, m, PQFamily::P).poly().scale(c);
            }
            ensure(lhs == rhs, format!("P-product disagrees with polynomials at {a} {b}"))?;
        }
    }
    for name in ["g2", "spin7"] {
        let v = Variety::builtin(name).map_err(|e| e.to_string())?;
        let ring = v.ring(false).map_err(|e| e.to_string())?;
        let weights = ring.presentation().weights();
        for d in 0..=ring.top_degree() + 2 {
            for e in horochow::poly::monomials_of_degree(&weights, d) {
                let nf = ring.normal_form(&Poly::monomial(e, int(1))).map_err(|e| e.to_string())?;
                let again = ring.normal_form(&ring.to_poly(&nf)).map_err(|e| e.to_string())?;
                ensure(nf == again, format!("{name}: normal form not idempotent in degree {d}"))?;
            }
        }
        let r = run_suite(v.spec(), SuiteOptions::all());
        all_pass(&r, &format!("{name}.ring.pairing."))?;
        passes(&r, &format!("{name}.quantum.degeneration"))?;
    }
    let r = run_suite(&builtin("g2").map_err(|e| e.to_string())?, SuiteOptions::classical());
    passes(&r, "g2.orthogonality")?;
    Ok("LR symmetry and associativity, P-products vs polynomials, normal forms, pairings, q→0, A1·A2 = 0".into())
}

fn reconstruction() -> Outcome {
    let v = Variety::builtin("g2").map_err(|e| e.to_string())?;
    let m = v.model(false).map_err(|e| e.to_string())?;
    let sigma = v.spec().golden.reconstruct.as_ref().ok_or("no reconstruction data")?.sigma.clone();
    let a = reconstruct(&v, &m, &sigma).map_err(|e| e.to_string())?;
    let b = reconstruct(&v, &m, &sigma).map_err(|e| e.to_string())?;
    ensure(a.to_string() == b.to_string(), "report is not deterministic")?;
    ensure(a.contains_true == Some(true), "true operator is not a solution")?;
    let dim = a.solution_dimension.ok_or("empty solution space")?;
    let flagged = !(a.sample_associative && a.sample_commutes && a.sample_cyclic);
    let printed = cli(&["reconstruct", "g2"])?;
    ensure(!flagged || printed.contains("flagged"), "failing sample is not flagged")?;
    ensure(printed.contains("contains_true: yes"), "CLI report lacks contains_true: yes")?;
    Ok(format!(
        "contains_true = yes, solution space dimension {dim}, sample {}",
        if flagged { "flagged" } else { "associative" }
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("fundamental class of the G2-variety", fundamental_class),
        ("G2 ring and degree diagram", g2_ring),
        ("G2 classical tables", g2_tables),
        ("G2 Poincaré duals", g2_duals),
        ("G2 quantum ring", g2_quantum),
        ("G2 semisimplicity at q=1", g2_semisimple),
        ("Spin7 classical ring", spin7_classical),
        ("spinor calculus", spinor),
        ("Spin7 quantum ring", spin7_quantum),
        ("property suites", properties),
        ("second-generator reconstruction", reconstruction),
    ];
    let mut failed = 0;
    for (i, (title, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("PASS {:>2} {title}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {title}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
