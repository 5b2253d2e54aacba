//! Acceptance criteria, one line each. Runs without the test harness so the
//! lines are always shown; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use latsum::closedform::{
    check_recurrence5, closed_a, verify_closed_b, verify_conj3, verify_conj4, ScanOptions,
};
use latsum::dp::{crosscheck, SumTable};
use latsum::oracle::{chain_value, chain_weight, Chain, DEFAULT_LIMIT};
use latsum::recguess::{guess, verify, GuessOptions};
use latsum::weights::{Bcmv, Form, WeightSystem};
use latsum::{BigRat, Exec, Poly, RatFunc};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Verdict = Result<String, String>;
type Criterion = (&'static str, Option<u64>, fn() -> Verdict);

fn int(n: usize) -> BigRat {
    BigRat::from_int(n as i64)
}

fn expect(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> Verdict {
    if ok {
        Ok(pass.into())
    } else {
        Err(fail.into())
    }
}

fn report_line(r: &latsum::closedform::ConjectureReport) -> String {
    serde_json::to_string(r).unwrap()
}

fn oracle_dp_equivalence() -> Verdict {
    let ws = Bcmv::<RatFunc>::symbolic(Form::Reduced);
    let rows = crosscheck(&ws, &ws, 12, DEFAULT_LIMIT, Exec::default()).map_err(|e| e.to_string())?;
    let bad: Vec<_> = rows.iter().filter(|r| !r.agree).map(|r| format!("{}_{}", r.quantity, r.p)).collect();
    expect(
        bad.is_empty() && rows.len() == 48,
        "A, B, C, D agree for p = 1..12 (48 comparisons)",
        format!("mismatches: {bad:?}"),
    )
}

fn conjecture_3() -> Verdict {
    let r = verify_conj3(300, ScanOptions::default()).map_err(|e| e.to_string())?;
    if !r.passed() {
        return Err(report_line(&r));
    }
    for p in 2..=300 {
        let v = closed_a(p).eval(&int(p)).map_err(|e| e.to_string())?;
        if v != -int(p) {
            return Err(format!("closed A at x = p = {p} gives {v}"));
        }
    }
    Ok(format!("A_p(p) = -p for p = 2..300 ({} values), closed A agrees", r.outcomes.len()))
}

fn closed_form_b() -> Verdict {
    let b = verify_closed_b(30, Form::Reduced, ScanOptions::default()).map_err(|e| e.to_string())?;
    let r5 = check_recurrence5(30, ScanOptions::default()).map_err(|e| e.to_string())?;
    expect(
        b.passed() && r5.passed(),
        "b_p = closed B and the recurrence holds for p <= 30",
        format!("{} / {}", report_line(&b), report_line(&r5)),
    )
}

fn conjecture_4() -> Verdict {
    let r = verify_conj4(500, ScanOptions::default()).map_err(|e| e.to_string())?;
    expect(
        r.passed() && r.outcomes.len() == 499,
        "C_p(p) = p(p+1)^2 for p = 2..500",
        report_line(&r),
    )
}

fn telescoping() -> Verdict {
    let ws = Bcmv::<RatFunc>::symbolic(Form::Reduced);
    let mut runner =
        TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let chains = proptest::collection::btree_set(1usize..=10, 1..=6);
    for _ in 0..200 {
        let entries: Vec<usize> = chains.new_tree(&mut runner).unwrap().current().into_iter().collect();
        let c = Chain::new(entries).map_err(|e| e.to_string())?;
        let n = ws.product_weight(&c).map_err(|e| e.to_string())?;
        let w = chain_weight(&ws, &c).map_err(|e| e.to_string())?;
        let g = ws.direct_value(&c).map_err(|e| e.to_string())?;
        let v = chain_value(&ws, &c).map_err(|e| e.to_string())?;
        if n != w || g != v {
            return Err(format!("chain {:?}", c.entries()));
        }
    }
    Ok("N = W and G = V on 200 random chains".into())
}

fn recurrence_guesser() -> Verdict {
    // (a)
    let mut fib = vec![BigRat::one(), BigRat::one()];
    while fib.len() < 20 {
        let next = fib[fib.len() - 1].clone() + &fib[fib.len() - 2];
        fib.push(next);
    }
    let g = guess(&fib, GuessOptions::new(2, 0)).map_err(|e| e.to_string())?.ok_or("no fit for Fibonacci")?;
    let want: Vec<Poly> = [-1, -1, 1].iter().map(|&c| Poly::from_ints(&[c])).collect();
    if g.candidate.coeffs() != want.as_slice() {
        return Err(format!("Fibonacci: {}", g.candidate.display()));
    }

    // (b) the minimal fit has degree 2; times (n+1) it is the degree-3 form
    let cubic: Vec<BigRat> = (1..=20).map(|p| int(p * (p + 1) * (p + 1))).collect();
    let h = guess(&cubic, GuessOptions::new(1, 3)).map_err(|e| e.to_string())?.ok_or("no fit for p(p+1)^2")?;
    let lifted: Vec<Poly> = h.candidate.coeffs().iter().map(|c| c.clone() * &Poly::from_ints(&[1, 1])).collect();
    // (n+1)(n+2)^2 u(n) - n(n+1)^2 u(n+1)
    let stated = [Poly::from_ints(&[4, 8, 5, 1]), Poly::from_ints(&[0, -1, -2, -1])];
    let k = lifted[1].leading().checked_div(&stated[1].leading()).map_err(|e| e.to_string())?;
    let proportional = lifted.iter().zip(&stated).all(|(l, s)| *l == s.scale(&k));
    if h.candidate.order() != 1 || h.candidate.degree() > 3 || !proportional {
        return Err(format!("p(p+1)^2: {}", h.candidate.display()));
    }

    // (c)
    let ws = Bcmv::fixed(BigRat::ratio(7, 3).unwrap(), Form::Reduced);
    let table = SumTable::compute(&ws, 260, Exec::default()).map_err(|e| e.to_string())?;
    let opts = GuessOptions::new(2, 16);
    let g = guess(&table.d[..60], opts).map_err(|e| e.to_string())?.ok_or("no order <= 2 fit for d_p(7/3)")?;
    if let Some(n) = verify(&g.candidate, &table.d) {
        return Err(format!("d_p(7/3) candidate fails at n = {n}"));
    }
    Ok(format!(
        "Fibonacci; p(p+1)^2 at order 1 degree {}; d_p(7/3) order {} degree {} holds on 260 terms",
        h.candidate.degree(),
        g.candidate.order(),
        g.candidate.degree()
    ))
}

fn raw_reduced() -> Verdict {
    let raw = Bcmv::<RatFunc>::symbolic(Form::Raw);
    let red = Bcmv::<RatFunc>::symbolic(Form::Reduced);
    for j in 1..=50 {
        if raw.f1(j).map_err(|e| e.to_string())? != red.f1(j).map_err(|e| e.to_string())? {
            return Err(format!("f1({j})"));
        }
        for i in 1..j {
            if raw.f2(i, j).map_err(|e| e.to_string())? != red.f2(i, j).map_err(|e| e.to_string())? {
                return Err(format!("f2({i}, {j})"));
            }
        }
    }
    Ok("f1 and f2 agree for 1 <= i < j <= 50".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("oracle-dp equivalence", Some(300), oracle_dp_equivalence),
        ("lattice sum A at x = p", Some(120), conjecture_3),
        ("closed form B", Some(120), closed_form_b),
        ("lattice sum C at x = p", Some(900), conjecture_4),
        ("telescoping identities", None, telescoping),
        ("recurrence guesser", Some(300), recurrence_guesser),
        ("raw/reduced forms", Some(60), raw_reduced),
    ];
    let mut failed = 0;
    for (k, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = run();
        let took = start.elapsed();
        let over = budget.is_some_and(|b| took > Duration::from_secs(b));
        let ok = verdict.is_ok() && !over;
        failed += usize::from(!ok);
        let detail = match &verdict {
            Ok(s) | Err(s) => s.as_str(),
        };
        let limit = budget.map(|b| format!(", budget {b}s")).unwrap_or_default();
        println!(
            "{} criterion {}: {name}: {detail} [{:.1}s{limit}]",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
