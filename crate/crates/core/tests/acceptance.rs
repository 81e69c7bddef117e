//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its runtime; the test fails if any criterion fails.

use std::collections::HashSet;
use std::io::Write;
use std::time::{Duration, Instant};

use gentle_core::decide::{
    decide, derived_discrete, equipartition_subset, silting_discrete, tau_tilting_finite,
    zero_winding_subset, DerivedVerdict, SiltingVerdict,
};
use gentle_core::minimality::{find_minimal_band, is_minimal_band, Shape};
use gentle_core::modrep::{are_isomorphic, hom_dim, m_lambda, q};
use gentle_core::presentation::{dual, validate, AlgebraClass};
use gentle_core::surface::{build_surface, scc_winding_genus0, winding_of_curve};
use gentle_core::words::{
    band_exists, classify_string, count_words, enumerate_bands, enumerate_strings, invert, letters,
    parse_word, rotate, Band, Letter, StringTag, Symmetry,
};
use gentle_core::{fixture, random_gentle, FixtureParams, Presentation, RandomOptions};

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn fx(name: &str, params: FixtureParams) -> Result<Presentation, String> {
    fixture(name, &params).map_err(err)
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort();
    v
}

fn crossings(s: &str) -> Vec<String> {
    s.split_whitespace().map(String::from).collect()
}

fn c1_e1() -> Check {
    let p = fx("E1", FixtureParams::default())?;
    let m = build_surface(&p).map_err(err)?;
    ensure!(
        m.genus == 0 && m.boundaries.len() == 3,
        "genus {} b {}",
        m.genus,
        m.boundaries.len()
    );
    ensure!(
        sorted(m.windings()) == vec![-4, 1, 1],
        "windings {:?}",
        m.windings()
    );
    let fig8 = winding_of_curve(&m, &crossings("1+ 2+ 4- 3-")).map_err(err)?;
    ensure!(fig8 == 0, "figure-eight winding {fig8}");
    let s = silting_discrete(&p).map_err(err)?;
    ensure!(s.verdict == SiltingVerdict::Yes, "silting {:?}", s.verdict);
    Ok(())
}

fn c2_lambda() -> Check {
    for n in 2..=6usize {
        for r in 1..n {
            for mm in 0..=3usize {
                let p = fx("Lambda", FixtureParams::lambda(r, n, mm))?;
                let tag = format!("Lambda({r},{n},{mm})");
                let m = build_surface(&p).map_err(err)?;
                ensure!(
                    m.genus == 0 && m.boundaries.len() == 2,
                    "{tag}: not an annulus"
                );
                let mut counts: Vec<usize> =
                    m.boundaries.iter().map(|b| b.black_points.len()).collect();
                counts.sort();
                let mut want = vec![mm + r, n - r];
                want.sort();
                ensure!(counts == want, "{tag}: marked points {counts:?}");
                let (r, mv) = (r as i64, sorted(m.m_values()));
                ensure!(mv == sorted(vec![2 + r, 2 - r]), "{tag}: m-values {mv:?}");
                let d = derived_discrete(&p).map_err(err)?;
                ensure!(d == DerivedVerdict::DiscreteLambda, "{tag}: {d:?}");
                let s = silting_discrete(&p).map_err(err)?;
                ensure!(s.verdict == SiltingVerdict::Yes, "{tag}: {:?}", s.verdict);
            }
        }
    }
    Ok(())
}

fn c3_kronecker() -> Check {
    let p = fx("Kronecker", FixtureParams::default())?;
    let b = band_exists(&p).map_err(err)?.ok_or("no band")?;
    ensure!(b.display(&p) == "a b^-1", "band {}", b.display(&p));
    let t = tau_tilting_finite(&p).map_err(err)?;
    ensure!(!t.finite, "tau-tilting finite");
    let m = build_surface(&p).map_err(err)?;
    ensure!(
        m.genus == 0 && m.m_values() == vec![2, 2],
        "m {:?}",
        m.m_values()
    );
    let s = silting_discrete(&p).map_err(err)?;
    ensure!(s.verdict == SiltingVerdict::No, "silting {:?}", s.verdict);
    let j = s.subset.ok_or("no subset evidence")?;
    let sum: i64 = j.iter().map(|&i| m.boundaries[i - 1].m).sum();
    ensure!(sum == 2, "evidence sums to {sum}");
    Ok(())
}

fn c4_s1() -> Check {
    for n in 1..=3 {
        let p = fx("S1", FixtureParams::n(n))?;
        let t = tau_tilting_finite(&p).map_err(err)?;
        ensure!(!t.finite, "S1({n}) tau-tilting finite");
        let c = t.minimal_band.ok_or(format!("S1({n}): no minimal band"))?;
        ensure!(
            c.shape == Shape::AsymSpecialBarbell,
            "S1({n}): shape {:?}",
            c.shape
        );
    }
    for n in [2, 3] {
        let ms = (0..5)
            .map(|l| m_lambda(n, &q(l)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let mut pairs = 0;
        for (i, a) in ms.iter().enumerate() {
            let d = hom_dim(a, a).map_err(err)?;
            ensure!(d == 1, "End(M_{i}) has dimension {d} for n = {n}");
            for b in &ms[i + 1..] {
                ensure!(
                    !are_isomorphic(a, b).map_err(err)?.isomorphic,
                    "isomorphic pair for n = {n}"
                );
                pairs += 1;
            }
        }
        ensure!(pairs == 10, "{pairs} pairs");
    }
    Ok(())
}

fn c5_s2() -> Check {
    for n in [2, 3] {
        let p = fx("S2", FixtureParams::n(n))?;
        let t = tau_tilting_finite(&p).map_err(err)?;
        ensure!(!t.finite, "S2({n}) tau-tilting finite");
        let c = find_minimal_band(&p)
            .map_err(err)?
            .ok_or("no minimal band")?;
        ensure!(
            c.shape == Shape::SymDumbbell,
            "S2({n}): shape {:?}",
            c.shape
        );
        ensure!(
            c.band.symmetry == Symmetry::Symmetric,
            "S2({n}): asymmetric band"
        );
        ensure!(
            c.reassemble() == c.rotation,
            "S2({n}): pieces do not reassemble"
        );
    }
    Ok(())
}

fn c6_e2() -> Check {
    let p = fx("E2", FixtureParams::default())?;
    let cases = [
        ("gamma mu beta sigma^-1", StringTag::NotCoadmissible),
        ("gamma mu beta sigma^-1 eta*", StringTag::AsymmetricString),
        (
            "gamma mu beta sigma^-1 eta* sigma beta^-1 mu^-1 gamma^-1",
            StringTag::SymmetricString,
        ),
        (
            "epsilon* alpha nu eta* sigma beta^-1",
            StringTag::AsymmetricString,
        ),
    ];
    for (w, want) in cases {
        let word = parse_word(&p, w).map_err(err)?;
        let got = classify_string(&p, &word).map_err(err)?.tag;
        ensure!(got == want, "{w}: {got:?}");
    }
    let bands = enumerate_bands(&p, 6).map_err(err)?;
    for (w, sym) in [
        (
            "gamma mu alpha^-1 epsilon* alpha mu^-1",
            Symmetry::Asymmetric,
        ),
        ("epsilon* alpha nu eta* nu^-1 alpha^-1", Symmetry::Symmetric),
    ] {
        let b = Band::from_cycle(&p, &parse_word(&p, w).map_err(err)?.letters)
            .ok_or(format!("{w} is not a band"))?;
        ensure!(b.symmetry == sym, "{w}: {:?}", b.symmetry);
        ensure!(bands.contains(&b), "{w} not enumerated");
    }
    ensure!(p.orbifold_count() == 2, "#O = {}", p.orbifold_count());
    let s = silting_discrete(&p).map_err(err)?;
    ensure!(s.verdict == SiltingVerdict::No, "silting {:?}", s.verdict);
    Ok(())
}

fn sample(seed: u64, skew: bool, graded: bool) -> Result<Presentation, String> {
    random_gentle(
        seed,
        1 + (seed as usize % 8),
        RandomOptions { skew, graded },
    )
    .map_err(err)
}

fn c7a_index_formula() -> Check {
    for seed in 0..200u64 {
        let p = sample(seed, seed % 2 == 1, true)?;
        let m = build_surface(&p).map_err(err)?;
        let (g, b, o) = (
            m.genus as i64,
            m.boundaries.len() as i64,
            m.orbifold_count as i64,
        );
        let total: i64 = m.windings().iter().sum();
        ensure!(total == 4 - 4 * g - 2 * b - o, "seed {seed}: sum {total}");
        let n = p.vertices().len() as i64;
        ensure!(
            2 - 2 * g - b == m.red_count as i64 + o - n,
            "seed {seed}: Euler"
        );
    }
    Ok(())
}

fn strip_dual(id: &str) -> &str {
    id.strip_suffix("**").unwrap_or(id)
}

fn c7b_duality() -> Check {
    for seed in 0..100u64 {
        let p = sample(seed, false, true)?;
        let d = dual(&p).map_err(err)?;
        for a in p.arrows() {
            let op = d
                .arrows()
                .iter()
                .find(|x| x.id == format!("{}*", a.id))
                .ok_or(format!("seed {seed}: {} has no dual", a.id))?;
            ensure!(
                a.degree + op.degree == 1,
                "seed {seed}: degrees of {}",
                a.id
            );
            ensure!(
                op.source == a.target && op.target == a.source,
                "seed {seed}: {} not reversed",
                a.id
            );
        }
        let dd = dual(&d).map_err(err)?;
        let arrows: HashSet<(String, String, String, i64)> = dd
            .arrows()
            .iter()
            .map(|a| {
                (
                    strip_dual(&a.id).to_string(),
                    a.source.clone(),
                    a.target.clone(),
                    a.degree,
                )
            })
            .collect();
        let orig: HashSet<(String, String, String, i64)> = p
            .arrows()
            .iter()
            .map(|a| (a.id.clone(), a.source.clone(), a.target.clone(), a.degree))
            .collect();
        ensure!(
            arrows == orig,
            "seed {seed}: arrows differ after double dual"
        );
        let rels: HashSet<(String, String)> = dd
            .relations()
            .iter()
            .map(|(a, b)| (strip_dual(a).to_string(), strip_dual(b).to_string()))
            .collect();
        let orig: HashSet<(String, String)> = p.relations().iter().cloned().collect();
        ensure!(
            rels == orig,
            "seed {seed}: relations differ after double dual"
        );
    }
    Ok(())
}

fn c7c_band_criteria() -> Check {
    for seed in 0..100u64 {
        let p = sample(seed, seed % 2 == 0, false)?;
        let l = letters(&p).len();
        let exists = band_exists(&p).map_err(err)?.is_some();
        let listed = !enumerate_bands(&p, l).map_err(err)?.is_empty();
        let long_words = count_words(&p, l + 1).map_err(err)? > 0;
        ensure!(
            exists == listed,
            "seed {seed}: band_exists {exists}, enumerated {listed}"
        );
        ensure!(
            exists == long_words,
            "seed {seed}: band_exists {exists}, words of length {} {long_words}",
            l + 1
        );
        if !exists {
            let a = enumerate_strings(&p, l).map_err(err)?.len();
            let b = enumerate_strings(&p, l + 1).map_err(err)?.len();
            ensure!(a == b, "seed {seed}: string count grows past {l}");
        }
    }
    Ok(())
}

fn matches_symmetric_form(w: &[Letter]) -> bool {
    let n = w.len();
    n >= 4
        && n.is_multiple_of(2)
        && (0..n).any(|r| {
            let rot = rotate(w, r);
            let k = n / 2;
            rot[0].is_special()
                && rot[k].is_special()
                && rot[1..k].iter().all(|l| !l.is_special())
                && rot[k + 1..] == invert(&rot[1..k])[..]
        })
}

fn c7d_minimal_bands() -> Check {
    let mut with_bands = 0;
    for seed in 0..100u64 {
        for skew in [false, true] {
            let p = sample(seed, skew, false)?;
            let bands = enumerate_bands(&p, 8).map_err(err)?;
            for b in bands.iter().filter(|b| b.symmetry == Symmetry::Symmetric) {
                ensure!(
                    matches_symmetric_form(&b.periodic_part),
                    "seed {seed}: symmetric band {} not of the form e* u h* u^-1",
                    b.display(&p)
                );
            }
            let exists = band_exists(&p).map_err(err)?.is_some();
            let cert = find_minimal_band(&p).map_err(err)?;
            ensure!(
                exists == cert.is_some(),
                "seed {seed} skew {skew}: band {exists}, certificate {}",
                cert.is_some()
            );
            if let Some(c) = cert {
                with_bands += 1;
                let again = is_minimal_band(&p, &c.band)
                    .ok_or(format!("seed {seed}: certificate does not re-verify"))?;
                ensure!(
                    again.shape == c.shape,
                    "seed {seed}: shape changed on re-check"
                );
                ensure!(
                    c.reassemble() == c.rotation,
                    "seed {seed}: pieces do not reassemble"
                );
            }
        }
    }
    ensure!(with_bands > 0, "no sample had a band");
    Ok(())
}

fn c7e_equipartition() -> Check {
    let mut genus0 = 0;
    for seed in 0..200u64 {
        let p = sample(seed, false, true)?;
        let m = build_surface(&p).map_err(err)?;
        if m.genus != 0 {
            continue;
        }
        genus0 += 1;
        let by_sums = equipartition_subset(&m).is_some();
        let by_curves = zero_winding_subset(&m).map_err(err)?.is_some();
        ensure!(
            by_sums == by_curves,
            "seed {seed}: subset sums {by_sums}, curves {by_curves}"
        );
        // opposite orientation: every curve winding changes sign, and the
        // curve around J becomes the curve around its complement
        let b = m.boundaries.len();
        let mut flipped = false;
        for mask in 1u64..1 << b {
            let js: Vec<usize> = (0..b)
                .filter(|j| mask >> j & 1 == 1)
                .map(|j| j + 1)
                .collect();
            let rest: Vec<usize> = (1..=b).filter(|j| !js.contains(j)).collect();
            let w = -scc_winding_genus0(&m, &js).map_err(err)?;
            let wc = scc_winding_genus0(&m, &rest).map_err(err)?;
            ensure!((w == 0) == (wc == 0), "seed {seed}: complement disagrees");
            flipped |= w == 0;
        }
        ensure!(
            flipped == by_sums,
            "seed {seed}: verdict changes under sign flip"
        );
        let verdict = silting_discrete(&p).map_err(err)?.verdict;
        let want = if by_sums {
            SiltingVerdict::No
        } else {
            SiltingVerdict::Yes
        };
        ensure!(verdict == want, "seed {seed}: verdict {verdict:?}");
    }
    ensure!(genus0 > 0, "no genus-0 samples");
    Ok(())
}

/// Writes past the test harness capture so the lines show in plain
/// `cargo test` output.
fn say(line: String) {
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

/// Id, name, check, time budget.
type Criterion = (&'static str, &'static str, fn() -> Check, Duration);

#[test]
fn acceptance() {
    let criteria: Vec<Criterion> = vec![
        ("1", "E1 end-to-end", c1_e1, Duration::from_secs(1)),
        (
            "2",
            "Lambda(r,n,m) sweep",
            c2_lambda,
            Duration::from_secs(5),
        ),
        ("3", "Kronecker", c3_kronecker, Duration::from_secs(1)),
        (
            "4",
            "S1 bands and brick family",
            c4_s1,
            Duration::from_secs(10),
        ),
        (
            "5",
            "S2 symmetric minimal band",
            c5_s2,
            Duration::from_secs(1),
        ),
        ("6", "E2 strings and bands", c6_e2, Duration::from_secs(1)),
        (
            "7a",
            "index formula and Euler consistency",
            c7a_index_formula,
            Duration::from_secs(30),
        ),
        (
            "7b",
            "dual involution and degree duality",
            c7b_duality,
            Duration::from_secs(30),
        ),
        (
            "7c",
            "band criteria agree",
            c7c_band_criteria,
            Duration::from_secs(30),
        ),
        (
            "7d",
            "symmetric form and minimal band soundness",
            c7d_minimal_bands,
            Duration::from_secs(30),
        ),
        (
            "7e",
            "equipartition through curves and sign flip",
            c7e_equipartition,
            Duration::from_secs(30),
        ),
    ];
    let mut failed = Vec::new();
    let start = Instant::now();
    for (id, name, check, budget) in criteria {
        let t = Instant::now();
        let result = check();
        let elapsed = t.elapsed();
        let result = result.and_then(|()| {
            if elapsed > budget {
                Err(format!("took {elapsed:?}, budget {budget:?}"))
            } else {
                Ok(())
            }
        });
        match result {
            Ok(()) => say(format!("PASS {id} {name} ({} ms)", elapsed.as_millis())),
            Err(e) => {
                say(format!(
                    "FAIL {id} {name} ({} ms): {e}",
                    elapsed.as_millis()
                ));
                failed.push(id);
            }
        }
    }
    say(format!("total {} ms", start.elapsed().as_millis()));
    // sanity: the report layer agrees with the individual checks on E1
    let e1 = fixture("E1", &FixtureParams::default()).unwrap();
    assert_eq!(validate(&e1).algebra_class, AlgebraClass::Gentle);
    assert_eq!(
        decide(&e1, None).unwrap().silting_discrete,
        SiltingVerdict::Yes
    );
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
