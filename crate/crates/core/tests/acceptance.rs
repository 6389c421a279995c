//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails. Every comparison is exact (rational or
//! integer equality); there are no floating-point tolerances.

mod common;

use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use common::{binom3, chi_oracle, k_class, rational, v};
use wallscope::chern::{hilbert_polynomial, PlaneChar};
use wallscope::destab::{dtpt_splittings, enumerate_destab_pairs, genus_bound, group_by_wall};
use wallscope::homalg::{
    euler_pairing, ghs_bound_check, points_plane_cohomology, PointConfig, Position,
};
use wallscope::ledger::{
    base_space_dim, chamber_sequence, hilb_component_table, pt_component_table, Provenance,
};
use wallscope::rational::{q, qf, Q};
use wallscope::stability::bg_discriminant;
use wallscope::walls::{
    apex_on_locus, hyperbola_locus, numerical_wall, render_svg, sort_and_check_nesting,
    HyperbolaLocus, View, WallLocus,
};
use wallscope::Char3;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(s: &str) -> Char3 {
    s.parse().expect("literal")
}

fn wall_table() -> Check {
    let pairs = enumerate_destab_pairs(&v()).map_err(|e| e.to_string())?;
    let got: Vec<WallLocus> = group_by_wall(&pairs).into_iter().map(|(w, _)| w).collect();
    let want = vec![
        WallLocus::circle(q(-4), q(4)),
        WallLocus::circle(qf(-9, 2), qf(33, 4)),
        WallLocus::circle(qf(-11, 2), qf(73, 4)),
        WallLocus::circle(qf(-13, 2), qf(121, 4)),
    ];
    ensure(got == want, || format!("walls {got:?}"))
}

fn hyperbola() -> Check {
    let h = hyperbola_locus(&v());
    let n = h.normalized();
    ensure(
        n == HyperbolaLocus {
            a: q(1),
            b: q(0),
            c: q(-12),
        },
        || format!("normalized {n:?}"),
    )?;
    let pairs = enumerate_destab_pairs(&v()).map_err(|e| e.to_string())?;
    for p in &pairs {
        ensure(apex_on_locus(&p.wall, &h) == Ok(true), || {
            format!("apex off locus: {:?}", p.wall)
        })?;
    }
    Ok(())
}

fn pairs_and_characters() -> Check {
    let pairs = enumerate_destab_pairs(&v()).map_err(|e| e.to_string())?;
    let groups = group_by_wall(&pairs);
    let counts: Vec<usize> = groups.iter().map(|(_, p)| p.len()).collect();
    ensure(counts == [1, 1, 3, 7], || format!("counts {counts:?}"))?;
    for p in &pairs {
        ensure(&p.sub + &p.quot == v(), || {
            format!("{} + {} != v", p.sub, p.quot)
        })?;
    }
    let mut subs: Vec<Char3> = groups[3].1.iter().map(|p| p.sub.clone()).collect();
    let mut quots: Vec<Char3> = groups[3].1.iter().map(|p| p.quot.clone()).collect();
    subs.sort();
    quots.sort();
    let mut want_sub: Vec<Char3> = (0..=6)
        .map(|k| Char3::new(q(1), q(-1), qf(1, 2), q(-k) - qf(1, 6)))
        .collect();
    let mut want_quot: Vec<Char3> = (0..=6)
        .map(|k| Char3::new(q(0), q(1), qf(-13, 2), q(k) + qf(91, 6)))
        .collect();
    want_sub.sort();
    want_quot.sort();
    ensure(subs == want_sub, || format!("wall 4 subs {subs:?}"))?;
    ensure(quots == want_quot, || format!("wall 4 quotients {quots:?}"))?;
    let q1 = &groups[0].1[0].quot;
    ensure(*q1 == c("0,2,-8,49/3"), || format!("wall 1 quotient {q1}"))
}

fn euler_reproduction() -> Check {
    let a_green = c("1,-1,-3/2,29/6");
    let b_green = c("0,1,-9/2,61/6");
    let i_l = c("1,-1,-1/2,11/6");
    let cases: Vec<(&str, Char3, Char3, i64)> = vec![
        ("green", b_green.clone(), a_green.clone(), 13),
        (
            "purple1",
            PlaneChar::ideal_of_points(2, -5).pushforward(),
            i_l.clone(),
            18,
        ),
        (
            "purple2",
            PlaneChar::ideal_of_points(1, -5).pushforward(),
            c("1,-1,-1/2,5/6"),
            19,
        ),
        (
            "purple3",
            PlaneChar::line_bundle(-5).pushforward(),
            c("1,-1,-1/2,-1/6"),
            20,
        ),
        (
            "pink",
            PlaneChar::ideal_of_points(6, -6).pushforward(),
            Char3::line_bundle(-1),
            22,
        ),
    ];
    for (name, b, a, want) in cases {
        let chi = euler_pairing(&b, &a);
        ensure(chi == q(-want), || format!("{name}: χ(B,A) = {chi}"))?;
        ensure(chi == chi_oracle(&b, &a), || {
            format!("{name}: oracle disagrees")
        })?;
    }
    for (name, a, want) in [
        ("I_C2(-1)", a_green.clone(), 8),
        ("I_L(-1)", i_l, 4),
        ("O_P(-4)", b_green.clone(), 3),
    ] {
        let val = q(1) - euler_pairing(&a, &a);
        ensure(val == q(want), || format!("1 - χ({name},{name}) = {val}"))?;
    }
    let ab = -euler_pairing(&a_green, &b_green);
    ensure(ab == q(1), || format!("-χ(A,B) = {ab}"))
}

fn points_model() -> Check {
    let cases = [
        (6, Position::Generic, 2, None, Some(0)),
        (6, Position::OnSmoothConic, 2, None, Some(1)),
        (5, Position::Collinear, 2, None, Some(2)),
        (6, Position::Collinear, 2, None, Some(3)),
        (6, Position::Generic, 6, Some(22), None),
    ];
    for (n, pos, d, h0, h1) in cases {
        let cfg = PointConfig::new(n, pos).map_err(|e| e.to_string())?;
        let h = points_plane_cohomology(&cfg, d);
        ensure(h0.is_none_or(|x| x == h.h0), || {
            format!("{n} {pos:?} d={d}: h0 {}", h.h0)
        })?;
        ensure(h1.is_none_or(|x| x == h.h1), || {
            format!("{n} {pos:?} d={d}: h1 {}", h.h1)
        })?;
    }
    Ok(())
}

fn component_tables() -> Check {
    let pt = pt_component_table();
    let mut dims: Vec<i64> = pt.iter().map(|r| r.total_dim).collect();
    dims.sort();
    ensure(dims == [24, 28, 28, 28, 28, 28, 28, 36], || {
        format!("PT dims {dims:?}")
    })?;
    for r in &pt {
        let base = r.base.as_ref().ok_or("PT record without base")?;
        let bd = base_space_dim(&base.to_string()).map_err(|e| e.to_string())?;
        ensure(r.fiber_dim + bd == r.total_dim, || {
            format!("{}: {} + {bd} != {}", r.name, r.fiber_dim, r.total_dim)
        })?;
    }
    let hilb = hilb_component_table();
    let got: Vec<(i64, bool)> = hilb
        .iter()
        .map(|r| (r.total_dim, r.provenance == Provenance::Expected))
        .collect();
    let want = vec![
        (24, false),
        (28, false),
        (30, false),
        (32, true),
        (48, true),
    ];
    ensure(got == want, || format!("Hilbert dims {got:?}"))?;
    let chambers: Vec<u32> = chamber_sequence().iter().map(|c| c.components).collect();
    ensure(chambers == [0, 1, 1, 2, 4, 7, 8], || {
        format!("chambers {chambers:?}")
    })
}

fn dtpt() -> Check {
    let s = dtpt_splittings(&v()).map_err(|e| e.to_string())?;
    let got: Vec<(i64, Char3)> = s
        .iter()
        .map(|x| (x.torsion_length, x.ideal.clone()))
        .collect();
    let want: Vec<(i64, Char3)> = (1..=6)
        .map(|i| (i, Char3::from_ints(1, 0, -6, 15 + i)))
        .collect();
    ensure(got == want, || format!("splittings {got:?}"))?;
    ensure(genus_bound(6, true) == Ok(10), || {
        "genus_bound(6, true)".into()
    })?;
    ensure(genus_bound(6, false) == Ok(6), || {
        "genus_bound(6, false)".into()
    })?;
    let hp = hilbert_polynomial(&v()).map_err(|e| e.to_string())?;
    ensure((hp.degree, hp.genus) == (6, 4), || format!("{hp:?}"))?;
    ensure(hp.to_string() == "6t-3", || format!("p(t) = {hp}"))
}

fn run_prop<S: Strategy>(
    name: &str,
    strat: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Check {
    let mut runner = TestRunner::new(Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strat, test).map_err(|e| format!("{name}: {e}"))
}

fn property_suites() -> Check {
    run_prop(
        "twist composition",
        (common::any_char(), rational(), rational()),
        |(c, b1, b2)| {
            prop_assert_eq!(c.twist(&b1).twist(&b2), c.twist(&(&b1 + &b2)));
            Ok(())
        },
    )?;
    run_prop(
        "Δ twist invariance",
        (common::any_char(), rational()),
        |(c, b)| {
            prop_assert_eq!(bg_discriminant(&c.twist(&b)), bg_discriminant(&c));
            Ok(())
        },
    )?;
    run_prop(
        "euler bi-additivity and integrality",
        (k_class(), k_class(), k_class()),
        |(e, f, g)| {
            let lhs = euler_pairing(&(&e + &f), &g);
            prop_assert_eq!(lhs.clone(), euler_pairing(&e, &g) + euler_pairing(&f, &g));
            prop_assert_eq!(
                euler_pairing(&g, &(&e + &f)),
                euler_pairing(&g, &e) + euler_pairing(&g, &f)
            );
            prop_assert!(lhs.is_integer());
            prop_assert!(euler_pairing(&e, &f).is_integer());
            Ok(())
        },
    )?;
    for a in -6..=6i64 {
        for b in -6..=6i64 {
            let chi = euler_pairing(&Char3::line_bundle(a), &Char3::line_bundle(b));
            ensure(chi == q(binom3(b - a + 3)), || {
                format!("χ(O({a}),O({b})) = {chi}")
            })?;
        }
    }
    run_prop(
        "wall symmetry and scaling",
        (common::any_char(), common::any_char(), 1i64..=9),
        |(x, y, k)| {
            prop_assert_eq!(numerical_wall(&x, &y), numerical_wall(&y, &x));
            prop_assert_eq!(numerical_wall(&x, &y.scale(&q(k))), numerical_wall(&x, &y));
            Ok(())
        },
    )?;

    let pairs = enumerate_destab_pairs(&v()).map_err(|e| e.to_string())?;
    let walls: Vec<WallLocus> = group_by_wall(&pairs).into_iter().map(|(w, _)| w).collect();
    let h = hyperbola_locus(&v());
    let s: Q = qf(4, 5);
    let first = render_svg(&walls, &h, &View::default(), 256, &s).map_err(|e| e.to_string())?;
    let second = render_svg(&walls, &h, &View::default(), 256, &s).map_err(|e| e.to_string())?;
    ensure(first == second, || "SVG output differs between runs".into())?;

    let report = sort_and_check_nesting(&walls).map_err(|e| e.to_string())?;
    ensure(report.is_nested(), || {
        format!("nesting violations {:?}", report.violations)
    })?;
    ensure(ghs_bound_check(8, 3, 1, 13, 24), || {
        "GHS (8,3,1,13,24)".into()
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "1 wall table: four circles (-4,4) (-9/2,33/4) (-11/2,73/4) (-13/2,121/4)",
            wall_table,
        ),
        (
            "2 hyperbola: β^2 - α^2 = 12 through every wall apex",
            hyperbola,
        ),
        (
            "3 pair counts (1,1,3,7) and wall characters",
            pairs_and_characters,
        ),
        (
            "4 Euler pairing: 13 18 19 20 22; self 8 4 3; AB 1",
            euler_reproduction,
        ),
        ("5 points in a plane: h1 0 1 2 3, h0 22", points_model),
        ("6 component tables and chamber counts", component_tables),
        ("7 DT/PT splittings and genus bounds", dtpt),
        ("8 property suites (1000 cases each)", property_suites),
    ];
    println!("acceptance: tolerance exact (rational/integer equality)");
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(()) => println!("PASS  {name}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
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
