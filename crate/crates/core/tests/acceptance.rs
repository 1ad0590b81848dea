//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit when any
//! criterion fails. Built with `harness = false`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use itertools::Itertools;
use splitgen::coeffs::{
    normal_order_form, check_congruence, f_simplified, g_plain, g_tilde, mod_d9_relation,
    ps_oracle, ratio, Congruence, ParamPoly,
};
use splitgen::conditions::{determining_indices, ConditionMultiset, Scheme};
use splitgen::lyndon::{
    bracketing, expand_bracket, standard_factorization, GradedAlphabet, LyndonWord, Word,
};
use splitgen::solver::{
    build_system, build_system_with_ties, solve_newton_real, verify_order_exact,
    verify_order_numeric, Ladder, Op, Ties, DEFAULT_STEPS,
};
use splitgen::witt::{s_min, witt_multi};

mod common;
#[path = "data/reference_lists.rs"]
mod lists;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let el = t.elapsed();
    ensure(el < limit, || format!("{what} took {el:.2?}, limit {limit:?}"))
}

// 1
fn counting() -> Outcome {
    let t = Instant::now();
    let nonsym: [u128; 12] = [2, 4, 7, 13, 22, 40, 70, 126, 225, 411, 746, 1376];
    for (m, &want) in (2..=13).zip(&nonsym) {
        let got = s_min(Scheme::NonsymmetricComplex, m).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("nonsymmetric m={m}: {got} != {want}"))?;
    }
    let sym: [u128; 8] = [2, 4, 8, 16, 34, 74, 164, 374];
    for (m, &want) in (3..=17).step_by(2).zip(&sym) {
        let got = s_min(Scheme::Symmetric, m).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("symmetric m={m}: {got} != {want}"))?;
    }
    within(t, Duration::from_secs(10), "counting")?;
    Ok(format!("20 values in {:.2?}", t.elapsed()))
}

// 2
fn witt_values() -> Outcome {
    let table: [(&[u64], u128); 12] = [
        (&[3, 1, 1], 4),
        (&[2, 3], 2),
        (&[5, 2], 3),
        (&[2, 2, 1], 6),
        (&[5, 1, 1], 6),
        (&[4, 3], 5),
        (&[7, 2], 5),
        (&[4, 2, 1], 15),
        (&[7, 1, 1], 8),
        (&[6, 3], 9),
        (&[9, 2], 5),
        (&[1, 1, 1], 2),
    ];
    for (n, want) in table {
        let got = witt_multi(n);
        ensure(got == want, || format!("M{n:?} = {got}, expected {want}"))?;
    }
    for n in 2..=12 {
        ensure(witt_multi(&[n, 1]) == 1, || format!("M({n},1) != 1"))?;
    }
    Ok("12 tabulated values and M(n,1) = 1 for n = 2..12".into())
}

// 3
fn condition_lists() -> Outcome {
    let mut checked = 0;
    for (scheme, table) in [
        (Scheme::NonsymmetricComplex, lists::NONSYMMETRIC_LISTS),
        (Scheme::Symmetric, lists::SYMMETRIC_LISTS),
    ] {
        let mut cumulative: BTreeSet<Vec<u32>> = BTreeSet::new();
        for &(m, listed) in table {
            let want: BTreeSet<Vec<u32>> = listed.iter().map(|s| s.to_vec()).collect();
            ensure(want.len() == listed.len(), || format!("duplicate in list {m}"))?;
            cumulative.extend(want.iter().cloned());
            let all: BTreeSet<Vec<u32>> = determining_indices(scheme, m)
                .map_err(|e| e.to_string())?
                .into_iter()
                .collect();
            let at_m: BTreeSet<Vec<u32>> = all
                .iter()
                .filter(|s| s.iter().sum::<u32>() as usize == m)
                .cloned()
                .collect();
            ensure(at_m == want, || {
                let missing: Vec<_> = want.difference(&at_m).collect();
                let extra: Vec<_> = at_m.difference(&want).collect();
                format!("{scheme} order {m}: missing {missing:?}, extra {extra:?}")
            })?;
            ensure(all == cumulative, || {
                format!("{scheme} order {m}: cumulative set differs")
            })?;
            checked += want.len();
        }
    }
    Ok(format!("{checked} listed sequences, compared as sets"))
}

// 4
fn lyndon_goldens() -> Outcome {
    let a = GradedAlphabet::uniform(&["x", "y"]);
    let letters = |s: &str| -> Vec<u32> { s.chars().map(|c| if c == 'x' { 0 } else { 1 }).collect() };
    let lw = |s: &str| LyndonWord::from_letters(&letters(s)).map_err(|e| format!("{s}: {e}"));
    let w = |s: &str| Word::from(letters(s));

    for (l, u, v) in [("xxxyy", "x", "xxyy"), ("xyxyy", "xy", "xyy")] {
        let (p, q) = standard_factorization(&lw(l)?).map_err(|e| e.to_string())?;
        let got = (a.spell(p.word()), a.spell(q.word()));
        ensure(got == (u.to_string(), v.to_string()), || format!("sigma({l}) = {got:?}"))?;
    }
    ensure(LyndonWord::from_letters(&letters("yxyy")).is_err(), || "yxyy accepted".into())?;

    let b = bracketing(&lw("xxyxyy")?).render(&a);
    ensure(b == "[x,[[x,y],[[x,y],y]]]", || format!("lambda(xxyxyy) = {b}"))?;

    let e = expand_bracket(&bracketing(&lw("xxyy")?));
    let coeffs: Vec<i64> = ["xxyy", "xyxy", "yxyx", "yyxx"]
        .iter()
        .map(|s| e.coefficient(&w(s)))
        .collect();
    ensure(coeffs == [1, -2, 2, -1] && e.len() == 4, || format!("lambda(xxyy) coefficients {coeffs:?}"))?;

    // alpha_1 lambda(xxyyy) + alpha_2 lambda(xyxyy) in beta coordinates
    let e1 = expand_bracket(&bracketing(&lw("xxyyy")?));
    let e2 = expand_bracket(&bracketing(&lw("xyxyy")?));
    let words: BTreeSet<Word> = e1.iter().chain(e2.iter()).map(|(w, _)| w.clone()).collect();
    ensure(words.len() == 10, || format!("{} words in the expansion", words.len()))?;
    let row = |x: &Word| [e1.coefficient(x), e2.coefficient(x)];
    let m = [row(&w("xxyyy")), row(&w("xyxyy"))];
    ensure(m == [[1, 0], [-3, 1]], || format!("beta = {m:?} alpha"))?;
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let inv = [[m[1][1] * det, -m[0][1] * det], [-m[1][0] * det, m[0][0] * det]];
    ensure(inv == [[1, 0], [3, 1]], || format!("alpha = {inv:?} beta"))?;
    let gammas: Vec<[i64; 2]> = words
        .iter()
        .filter(|x| !splitgen::lyndon::is_lyndon(x.letters()))
        .map(|x| {
            let r = row(x);
            [r[0] * inv[0][0] + r[1] * inv[1][0], r[0] * inv[0][1] + r[1] * inv[1][1]]
        })
        .collect();
    let want: Vec<[i64; 2]> = vec![[-6, -3], [4, 2], [-3, -1], [12, 4], [-6, -3], [-3, -1], [0, 1], [1, 0]];
    ensure(gammas == want, || format!("gamma = {gammas:?}"))?;
    Ok("factorizations, bracketing, 4-term and 10-term expansions".into())
}

/// `Σ_{k_1<…<k_n} Π p_{k_j}^{e_j}` built directly from monomials.
fn ordered(r: usize, e: &[u32]) -> ParamPoly {
    let mut out = ParamPoly::zero(r);
    for ks in (0..r).combinations(e.len()) {
        let mut exps = vec![0; r];
        for (j, k) in ks.into_iter().enumerate() {
            exps[k] += e[j];
        }
        out.add_term(exps, ratio(1, 1));
    }
    out
}

// 5
fn coefficient_goldens() -> Outcome {
    for r in [3, 4] {
        let mut want12 = ParamPoly::zero(r);
        let mut want21 = ParamPoly::zero(r);
        for i in 0..r {
            let mut e = vec![0; r];
            e[i] = 3;
            want12.add_term(e.clone(), ratio(1, 2));
            want21.add_term(e, ratio(1, 2));
            for j in i + 1..r {
                let mut e = vec![0; r];
                e[i] = 1;
                e[j] = 2;
                want12.add_term(e, ratio(1, 1));
                let mut e = vec![0; r];
                e[i] = 2;
                e[j] = 1;
                want21.add_term(e, ratio(1, 1));
            }
        }
        ensure(g_plain(&[1, 2], r) == want12, || format!("g(1,2) at r={r}: {}", g_plain(&[1, 2], r)))?;
        ensure(g_plain(&[2, 1], r) == want21, || format!("g(2,1) at r={r}: {}", g_plain(&[2, 1], r)))?;
    }

    let r = 6;
    let f = |idx: &[u32]| f_simplified(idx, Scheme::Symmetric, r).map_err(|e| e.to_string());
    let half = ratio(1, 2);
    for i in [1, 3, 5, 7] {
        ensure(f(&[i])? == ordered(r, &[i]), || format!("f({i})"))?;
    }
    for [i1, i2, i3] in [[1, 1, 3], [1, 3, 1], [3, 5, 1], [1, 3, 3]] {
        let mut want = ordered(r, &[i1, i2, i3]);
        want += &ordered(r, &[i1, i2 + i3]).scale(&half);
        want += &ordered(r, &[i1 + i2, i3]).scale(&half);
        ensure(f(&[i1, i2, i3])? == want, || format!("f({i1},{i2},{i3})"))?;
    }
    for [i1, i2, i3, i4, i5] in [[1, 1, 1, 1, 3], [1, 3, 1, 5, 3], [3, 1, 1, 3, 1]] {
        let mut want = ordered(r, &[i1, i2, i3, i4, i5]);
        for e in [
            [i1, i2, i3, i4 + i5],
            [i1, i2, i3 + i4, i5],
            [i1, i2 + i3, i4, i5],
            [i1 + i2, i3, i4, i5],
        ] {
            want += &ordered(r, &e).scale(&half);
        }
        for e in [[i1, i2 + i3, i4 + i5], [i1 + i2, i3, i4 + i5], [i1 + i2, i3 + i4, i5]] {
            want += &ordered(r, &e).scale(&ratio(1, 4));
        }
        for e in [[i1, i2 + i3 + i4 + i5], [i1 + i2 + i3 + i4, i5]] {
            want -= &ordered(r, &e).scale(&ratio(1, 8));
        }
        ensure(f(&[i1, i2, i3, i4, i5])? == want, || format!("f({i1},{i2},{i3},{i4},{i5})"))?;
    }
    Ok("g(1,2), g(2,1) at r = 3, 4; symmetric f for n = 1, 3, 5".into())
}

// 6
fn oracle_equivalence() -> Outcome {
    let t = Instant::now();
    let mut compared = 0usize;
    for content in common::contents(4, 6) {
        for r in 1..=4 {
            for tilde in [false, true] {
                let oracle = ps_oracle(&content, r, tilde).map_err(|e| e.to_string())?;
                ensure(
                    oracle.keys().all(|w| ConditionMultiset::of_indices(w) == content),
                    || format!("oracle words outside {content:?}"),
                )?;
                for idx in common::orderings(&content) {
                    let want = oracle.get(&idx).cloned().unwrap_or_else(|| ParamPoly::zero(r));
                    let g = if tilde { g_tilde(&idx, r) } else { g_plain(&idx, r) };
                    ensure(g == want, || format!("g{idx:?} r={r} tilde={tilde}"))?;
                    let b = normal_order_form(&idx, r, tilde).map_err(|e| e.to_string())?;
                    ensure(b == want, || format!("normal order {idx:?} r={r} tilde={tilde}"))?;
                    compared += 2;
                }
            }
        }
    }
    within(t, Duration::from_secs(120), "oracle sweep")?;
    Ok(format!("{compared} exact comparisons in {:.2?}", t.elapsed()))
}

fn tuples<const N: usize>(m: u32, odd_only: bool) -> Vec<[u32; N]> {
    (0..N)
        .map(|_| 1..m)
        .multi_cartesian_product()
        .filter(|t| t.iter().sum::<u32>() == m && (!odd_only || t.iter().all(|x| x % 2 == 1)))
        .map(|t| t.try_into().expect("length N"))
        .collect()
}

// 7
fn congruences() -> Outcome {
    let mut failures: Vec<String> = Vec::new();
    let mut checked = 0;
    for m in [5, 7] {
        for r in [3, 4, 5] {
            let mut cases: Vec<Congruence> = Vec::new();
            cases.extend(tuples::<3>(m, true).into_iter().map(Congruence::Aaa));
            cases.extend(tuples::<3>(m, false).into_iter().map(Congruence::ApB));
            for t in tuples::<5>(m, true) {
                cases.extend([Congruence::Aaaaa(t), Congruence::AaaaP(t), Congruence::AaapB(t), Congruence::AapBb(t)]);
            }
            for c in cases {
                let o = check_congruence(&c, r).map_err(|e| e.to_string())?;
                checked += 1;
                if !o.member || o.mirror == Some(false) {
                    failures.push(format!("{c:?} m={m} r={r} member={} mirror={:?}", o.member, o.mirror));
                }
            }
        }
    }
    let note = mod_d9_relation(5).map_err(|e| e.to_string())?;
    if !note {
        failures.push("mod-D9 relation at r=5".into());
    }
    if failures.is_empty() {
        return Ok(format!("{checked} congruences and the mod-D9 relation"));
    }
    let kinds: BTreeSet<String> = failures
        .iter()
        .map(|f| f.split('(').next().unwrap_or("").to_string())
        .collect();
    Err(format!(
        "{} of {checked} fail ({}), first: {}",
        failures.len(),
        kinds.into_iter().join(", "),
        failures[0]
    ))
}

fn six_factor_ladder() -> Ladder {
    Ladder::exact(&[
        (Op::A, 7, 24),
        (Op::B, 2, 3),
        (Op::A, 3, 4),
        (Op::B, -2, 3),
        (Op::A, -1, 24),
        (Op::B, 1, 1),
    ])
}

// 8
fn composition_verification() -> Outcome {
    let t = Instant::now();
    let l = six_factor_ladder();
    let v = verify_order_exact(&l, 2).map_err(|e| e.to_string())?;
    let fit = verify_order_numeric(&l, 4, 7, &DEFAULT_STEPS).map_err(|e| e.to_string())?;
    within(t, Duration::from_secs(5), "verification")?;
    let detail = format!(
        "exact ok={} first defect {:?}, slope {:.3}",
        v.ok, v.first_defect_grade, fit.slope
    );
    ensure(v.ok, || format!("not second order: {detail}"))?;
    ensure(v.first_defect_grade == Some(3), || format!("expected first defect at grade 3: {detail}"))?;
    ensure((2.7..=3.3).contains(&fit.slope), || format!("slope outside [2.7, 3.3]: {detail}"))?;
    Ok(detail)
}

// 9
fn solver() -> Outcome {
    let sys = build_system(Scheme::Symmetric, 4, 3, true).map_err(|e| e.to_string())?;
    let sol = solve_newton_real(&sys, &[1.0, -1.0, 1.0], 1e-12, 100).map_err(|e| e.to_string())?;
    let p1 = 1.0 / (2.0 - 2f64.powf(1.0 / 3.0));
    let v = sol.real_values();
    ensure((v[0] - p1).abs() < 1e-10 && (v[2] - p1).abs() < 1e-10, || format!("r=3 solution {v:?}"))?;
    ensure(sol.is_real(1e-12), || "r=3 solution not real".into())?;

    let ties = Ties::groups(&[0, 0, 1, 0, 0]).map_err(|e| e.to_string())?;
    let sys5 = build_system_with_ties(Scheme::Symmetric, 4, ties).map_err(|e| e.to_string())?;
    let sol5 = solve_newton_real(&sys5, &[0.4, 0.4, -0.6, 0.4, 0.4], 1e-12, 100).map_err(|e| e.to_string())?;
    let q1 = 1.0 / (4.0 - 4f64.powf(1.0 / 3.0));
    let v5 = sol5.real_values();
    ensure(
        [0, 1, 3, 4].iter().all(|&j| (v5[j] - q1).abs() < 1e-10) && (v5[2] - (1.0 - 4.0 * q1)).abs() < 1e-10,
        || format!("r=5 solution {v5:?}"),
    )?;

    let mut slopes = Vec::new();
    for s in [&sol, &sol5] {
        let ladder = Ladder::from_scheme(Scheme::Symmetric, &Ladder::coefs_from_complex(&s.values))
            .map_err(|e| e.to_string())?;
        let fit = verify_order_numeric(&ladder, 4, 4, &DEFAULT_STEPS).map_err(|e| e.to_string())?;
        ensure((4.6..=5.4).contains(&fit.slope), || format!("slope {:.3}", fit.slope))?;
        slopes.push(fit.slope);
    }
    Ok(format!(
        "p1 = {:.12}, r=5 p1 = {:.12}, slopes {:.3} / {:.3}",
        v[0], v5[0], slopes[0], slopes[1]
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("counting reproduction", counting),
        ("Witt values", witt_values),
        ("condition lists", condition_lists),
        ("Lyndon goldens", lyndon_goldens),
        ("coefficient formula goldens", coefficient_goldens),
        ("oracle equivalence", oracle_equivalence),
        ("coset congruences", congruences),
        ("composition verification", composition_verification),
        ("solver", solver),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let n = i + 1;
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let el = t.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {n} {name} [{el:.2?}]: {detail}"),
            Err(why) => {
                println!("FAIL {n} {name} [{el:.2?}]: {why}");
                failed.push(n);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
    } else {
        println!("acceptance: {} of 9 criteria fail: {failed:?}", failed.len());
        std::process::exit(1);
    }
}
