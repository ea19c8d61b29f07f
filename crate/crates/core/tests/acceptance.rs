//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. Expected values are literals here, independent of the library's
//! fixture module.

mod common;

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;

use coxkit::classify::{group_order, GroupOrder};
use coxkit::diagram::{parse_file, CoxeterDiagram, Subset};
use coxkit::growth;
use coxkit::nerve;
use coxkit::numeric;
use coxkit::series::{MultiPoly, RationalFn};

use common::{timed, Outcome};

const DIAGRAM: &str = include_str!("../data/example_87.cox");

fn example() -> (CoxeterDiagram, Subset) {
    let d = parse_file(DIAGRAM).expect("bundled diagram parses").diagram;
    let t = d.t_set().expect("T declared");
    (d, t)
}

fn sub(d: &CoxeterDiagram, names: &[&str]) -> Subset {
    d.subset_of(names).expect("generator names")
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

fn criterion_1() -> Outcome {
    timed(1.0, || {
        let (d, t) = example();
        let rest = d.all().difference(t);
        let cases = [
            ("E8", rest, 696_729_600u64),
            ("D7", rest.difference(sub(&d, &["s2"])), 322_560),
            ("E7", rest.difference(sub(&d, &["s8"])), 2_903_040),
        ];
        for (name, a, want) in cases {
            match group_order(&d, a) {
                GroupOrder::Finite(n) if n == want.into() => {}
                other => return Err(format!("{name}: order {other}, expected {want}")),
            }
        }
        Ok("E8 696729600, D7 322560, E7 2903040".into())
    })
}

fn two_variable_expected() -> Vec<(u32, u32, i64)> {
    vec![
        (1, 7, 276480),
        (0, 8, 17280),
        (1, 6, 967680),
        (0, 7, 207360),
        (1, 5, 1451520),
        (0, 6, 483840),
        (1, 4, 1209600),
        (0, 5, 483840),
        (1, 3, 604800),
        (0, 4, 241920),
        (1, 2, 181440),
        (0, 3, 60480),
        (1, 1, 30240),
        (0, 2, 6720),
        (1, 0, 2160),
        (0, 1, 240),
        (0, 0, 1),
    ]
}

fn criterion_2() -> Outcome {
    timed(5.0, || {
        let (d, t) = example();
        let phi = nerve::per_generator_partition(&d, t);
        let f = nerve::f_closure(&d, t, &phi).map_err(|e| e.to_string())?;
        let want = two_variable_expected();
        if f.poly.num_terms() != want.len() {
            return Err(format!("{} terms, expected {}", f.poly.num_terms(), want.len()));
        }
        for (a, b, c) in want {
            let got = f.poly.aligned(&["t1", "t2"]).coefficient(&[a, b]);
            if got != BigRational::from_integer(c.into()) {
                return Err(format!("t1^{a} t2^{b}: {got}, expected {c}"));
            }
        }
        Ok("17 coefficients equal".into())
    })
}

const DIAGONAL: [i64; 9] = [1, 2400, 36960, 241920, 846720, 1693440, 1935360, 1175040, 293760];

fn criterion_3() -> Outcome {
    let (d, t) = example();
    let f = nerve::f_closure(&d, t, &d.partition()).map_err(|e| e.to_string())?;
    if f.coefficients() != ints(&DIAGONAL) {
        return Err(format!("f(t,t) = {:?}", f.coefficients()));
    }
    let f2 = nerve::f_closure(&d, t, &nerve::per_generator_partition(&d, t)).map_err(|e| e.to_string())?;
    if f2.diagonal("t").coefficients() != ints(&DIAGONAL) {
        return Err("diagonal of the two-variable polynomial differs".into());
    }
    Ok("9 coefficients equal; diagonal of criterion 2 agrees".into())
}

fn reciprocal_expected() -> RationalFn {
    let num = MultiPoly::univariate_int("x", &[1, -2392, 20188, -70504, 107590, -70504, 20188, -2392, 1]);
    let den = MultiPoly::univariate_int("x", &[1, 1]).pow(8);
    RationalFn::new(num, den).unwrap()
}

fn criterion_4() -> Outcome {
    let (d, t) = example();
    let want = reciprocal_expected();
    let start = Instant::now();
    let special = growth::closure_growth_by_specialization(&d).map_err(|e| e.to_string())?;
    let serre_secs = start.elapsed().as_secs_f64();
    let f = nerve::f_closure(&d, t, &d.partition()).map_err(|e| e.to_string())?;
    let via_f = growth::growth_from_f(&f.poly).map_err(|e| e.to_string())?;
    let r1 = special.closure.series.recip().map_err(|e| e.to_string())?;
    let r2 = via_f.series.recip().map_err(|e| e.to_string())?;
    if r1 != want {
        return Err(format!("specialization route gives 1/W = {r1}"));
    }
    if r2 != want {
        return Err(format!("f-substitution route gives 1/W = {r2}"));
    }
    if serre_secs > 60.0 {
        return Err(format!("Serre route took {serre_secs:.1} s (budget 60 s)"));
    }
    Ok(format!("both routes give the expected 1/W, equal to each other (Serre {serre_secs:.2} s)"))
}

const POLES: [(f64, f64); 8] = [
    (0.41e-3, 0.0),
    (0.24, 0.16),
    (0.24, -0.16),
    (0.63, 0.0),
    (1.6, 0.0),
    (2.9, 1.9),
    (2.9, -1.9),
    (2.4e3, 0.0),
];

fn criterion_5() -> Outcome {
    let r = reciprocal_expected().recip().unwrap();
    let report = numeric::poles_of_growth(&r).map_err(|e| e.to_string())?;
    let misses: Vec<String> = POLES
        .iter()
        .filter(|&&(re, im)| {
            !report.roots.iter().any(|z| {
                numeric::two_digits(z.re, re) && if im == 0.0 { z.is_real() } else { numeric::two_digits(z.im, im) }
            })
        })
        .map(|&(re, im)| {
            let near = report
                .roots
                .iter()
                .min_by(|a, b| {
                    let da = (a.re - re).hypot(a.im - im);
                    let db = (b.re - re).hypot(b.im - im);
                    da.total_cmp(&db)
                })
                .unwrap();
            format!("expected {re:.1e}{im:+.1e}i, nearest root {:.4e}{:+.4e}i", near.re, near.im)
        })
        .collect();
    if numeric::matches_two_digits(&report, &POLES) {
        Ok(format!("8 poles match at 2 significant digits (residual {:.1e})", report.residual))
    } else {
        Err(format!("{}/8 poles match; {}", 8 - misses.len(), misses.join("; ")))
    }
}

fn criterion_6() -> Outcome {
    let (d, t) = example();
    let f = nerve::f_closure(&d, t, &d.partition()).map_err(|e| e.to_string())?;
    let p = f.to_uni();
    let real = numeric::sturm_real_count(&p, None).map_err(|e| e.to_string())?;
    let sf = numeric::square_free_part(&p);
    if real != 4 {
        return Err(format!("{real} distinct real roots, expected 4"));
    }
    if sf.degree() != 8 {
        return Err(format!("square-free part has degree {}", sf.degree()));
    }
    Ok("4 distinct real roots of a square-free degree-8 f(t,t): 4 non-real".into())
}

fn criterion_7() -> Outcome {
    let (d, t) = example();
    let phi = d.partition();
    let k = nerve::parse_link_spec(&d, t, "t1:1,t2:3").map_err(|e| e.to_string())?;
    let fk = nerve::f_link(&d, t, &phi, &k).map_err(|e| e.to_string())?;
    if fk.coefficients() != ints(&[1, 8, 24, 32, 16]) {
        return Err(format!("f_K = {:?}", fk.coefficients()));
    }
    let l = nerve::parse_link_spec(&d, t, "t2:2").map_err(|e| e.to_string())?;
    let fl = nerve::f_link(&d, t, &phi, &l).map_err(|e| e.to_string())?;
    let v = fl.eval_diagonal(&BigRational::new((-1).into(), 2.into()));
    if v == BigRational::from_integer(0.into()) {
        return Err("f_L(-1/2) = 0".into());
    }
    Ok(format!("f_K = (1+2t)^4; f_L(-1/2) = {v}"))
}

fn criterion_8() -> Outcome {
    timed(120.0, || {
        let parts = [
            ("(a)", common::three_routes()),
            ("(b)", common::nerve_brute_force(5)),
            ("(c)", common::b_chain_closed_form()),
            ("(d)", common::poincare_vs_search()),
            ("(e)", common::word_scramble()),
        ];
        let mut lines = Vec::new();
        for (tag, r) in parts {
            match r {
                Ok(s) => lines.push(format!("{tag} {s}")),
                Err(e) => return Err(format!("{tag} {e}")),
            }
        }
        Ok(lines.join("; "))
    })
}

fn criterion_9() -> Outcome {
    let p = MultiPoly::univariate_int("t", &DIAGONAL);
    let alternating: i64 = DIAGONAL.iter().enumerate().map(|(i, c)| if i % 2 == 0 { *c } else { -c }).sum();
    let (d, t) = example();
    let f = nerve::f_closure(&d, t, &d.partition()).map_err(|e| e.to_string())?;
    let v = f.eval_diagonal(&BigRational::from_integer((-1).into()));
    if alternating != 1 || v != BigRational::from_integer(1.into()) || f.poly.diagonal("t") != p {
        return Err(format!("f(-1) = {v}, alternating sum {alternating}"));
    }
    Ok("f(-1) = 1".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("orders", criterion_1),
        ("f, two variables", criterion_2),
        ("f, diagonal", criterion_3),
        ("growth function", criterion_4),
        ("poles", criterion_5),
        ("real-rootedness", criterion_6),
        ("links", criterion_7),
        ("property suite", criterion_8),
        ("sphere Euler check", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
