//! Acceptance run: one pass/fail line per criterion, nonzero exit if any fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use souslin::bidirected::{
    asymmetry_violations, bidirected_check, sample_grid, technical_lemma_check, DoubleArrowPoint, DoubleArrowSpace,
    Relation,
};
use souslin::check::{CheckResult, Witness};
use souslin::diagonalizer::{
    diagonalize, refute_s2, refute_witness_holds, unit_branch, verify_trace, DiagStatus, DiagTrace, SpaceInstance,
    WOracle,
};
use souslin::openmap::{image_identity_check, ShiftedVsOracle, VsOracle};
use souslin::rat::Rat;
use souslin::scheme::{decode, encode_branch, scheme_check, scheme_check_vs, vs_interval, IntervalDesc, IntervalScheme};
use souslin::seqtree::{lex_before, Branch, FinSeq, Tri};
use souslin::topology::{aqn_bruteforce, cut_base_element, cut_vs};

type Outcome = Result<String, String>;

fn random_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> Rat {
    let den = rng.gen_range(1..=max_den);
    let num = rng.gen_range(lo * den..hi * den);
    Rat::new(num, den)
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {t:.2?}, limit {limit:?}"))
    }
}

fn holds(r: &CheckResult, what: &str) -> Result<(), String> {
    if r.is_holds() {
        Ok(())
    } else {
        Err(format!("{what}: {}", r.label()))
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = scheme_check_vs(4, 6);
    if r != CheckResult::holds(4) {
        return Err(format!("scheme check: {}", r.label()));
    }
    within(Duration::from_secs(5), start)?;
    Ok("scheme axioms and step bound hold to depth 4 with 6 children".into())
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..1000 {
        let x = random_rat(&mut rng, -64, 64, 1 << 16);
        let direct = decode(&encode_branch(&x), 64);
        if !direct.exact || direct.value != x {
            return Err(format!("{x} decoded to {}", direct.value));
        }
        // decode from the eventually periodic normal form, not the encoded tail
        let e = encode_branch(&x).canonical().ok_or(format!("no normal form for {x}"))?;
        let d = decode(&Branch::from_eventual(&e), 64);
        if !d.exact || d.value != x {
            return Err(format!("{x} decoded to {} (exact {})", d.value, d.exact));
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok("1000 round trips exact".into())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut done = 0;
    while done < 500 {
        let x = random_rat(&mut rng, 0, 64, 1 << 12);
        let y = random_rat(&mut rng, 0, 64, 1 << 12);
        if x == y {
            continue;
        }
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        if lex_before(&encode_branch(&x), &encode_branch(&y), 64) != Tri::True {
            return Err(format!("{x} < {y} but their branches are not in that order"));
        }
        done += 1;
    }
    Ok("500 pairs in [0, 64) keep their order".into())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let r = aqn_bruteforce(3, 4);
    if r != CheckResult::holds(4) {
        return Err(r.label());
    }
    within(Duration::from_secs(10), start)?;
    Ok("items (i)-(iv) agree on the whole universe".into())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let x = random_rat(&mut rng, -40, 40, 1000);
        let q = encode_branch(&x);
        for n in 0..=10 {
            let lhs = cut_vs(&q, n).map_err(|e| e.to_string())?.with_point();
            if lhs != cut_base_element(&x, n) {
                return Err(format!("x = {x}, n = {n}"));
            }
        }
    }
    Ok("200 points, levels 0 to 10".into())
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let points: Vec<Rat> = (0..8).map(|_| random_rat(&mut rng, -8, 8, 97)).collect();
    for x in &points {
        let p = encode_branch(x);
        for n in 0..=6 {
            let r = image_identity_check(&VsOracle, &p, n, 50, &mut rng).map_err(|e| e.to_string())?;
            holds(&r, &format!("x = {x}, n = {n}"))?;
        }
    }
    Ok(format!("{} branches, levels 0 to 6, 50 samples each", points.len()))
}

fn criterion_7() -> Outcome {
    let grid = sample_grid(20);
    for rel in [Relation::Lex, Relation::Constructed] {
        let r = bidirected_check(&DoubleArrowSpace::new(rel), &grid, 5);
        if r.verdict != CheckResult::holds(5) {
            return Err(format!("{rel:?}: {}", r.verdict.label()));
        }
    }
    let big = sample_grid(48);
    assert_eq!(big.len(), 50);
    let bad = asymmetry_violations(Relation::Constructed, &big);
    if !bad.is_empty() {
        return Err(format!("{} asymmetry violations", bad.len()));
    }
    Ok("both relations bidirected on 22 points; constructed relation asymmetric on 50x50".into())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let den = rng.gen_range(2..200);
        let x = Rat::new(rng.gen_range(1..=den), den);
        let z = DoubleArrowPoint { x, side: 0 };
        let r = technical_lemma_check(&z, 8);
        holds(&r.verdict, &format!("{z}"))?;
    }
    Ok("items (i)-(v) at 20 side-0 points".into())
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let t = diagonalize(&WOracle, SpaceInstance::double_arrow(Relation::Constructed), 4, 16).map_err(|e| e.to_string())?;
    let json = serde_json::to_string(&t).map_err(|e| e.to_string())?;
    let back: DiagTrace = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    if back != t {
        return Err("trace does not survive serialization".into());
    }
    if back.steps.len() != 1 || back.status != DiagStatus::S1Failure {
        return Err(format!("{} steps, status {:?}", back.steps.len(), back.status));
    }
    if back.failure.as_ref().map(|f| f.step) != Some(1) {
        return Err("failure not at the first odd step".into());
    }
    holds(&verify_trace(&back), "offline verification")?;
    if !back.certificates.iter().all(|c| matches!(c, Witness::NoBaseNeighborhood { .. }) && c.reverify()) {
        return Err("certificate does not re-verify".into());
    }
    let space = DoubleArrowSpace::new(Relation::Constructed);
    let third = Rat::new(1, 3);
    let p = unit_branch(&third).ok_or("no branch of 1/3")?;
    let z = DoubleArrowPoint { x: third, side: 0 };
    let r = refute_s2(&WOracle, &space, &p, Some(&z), 8).map_err(|e| e.to_string())?;
    holds(&r.verdict, "refutation")?;
    let ws = &r.candidates[0].witnesses;
    if ws.len() != 9 || !ws.iter().all(|w| refute_witness_holds(&WOracle, &space, &p, &z, w)) {
        return Err("refutation witnesses missing or not re-verified".into());
    }
    within(Duration::from_secs(5), start)?;
    Ok("step 0 verified offline, S1 failure at step 1 certified, 9 refutation witnesses".into())
}

/// The coding scheme with child 1 of ⟨0⟩ stretched over child 0.
struct Overlapping;

impl IntervalScheme for Overlapping {
    fn interval(&self, a: &FinSeq) -> IntervalDesc {
        let iv = vs_interval(a);
        if a.entries() == [0, 1] {
            let (lo, hi) = iv.bounds().expect("nonroot");
            return IntervalDesc::half_open(lo - &Rat::new(1, 8), hi.clone());
        }
        iv
    }
}

fn criterion_10() -> Outcome {
    let check = |name: &str, r: &CheckResult| -> Result<(), String> {
        match r.witness() {
            Some(w) if w.reverify() => Ok(()),
            Some(_) => Err(format!("{name}: witness does not re-verify")),
            None => Err(format!("{name}: not detected ({})", r.label())),
        }
    };
    check("overlapping children", &scheme_check(&Overlapping, 4, 6))?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let shifted = image_identity_check(&ShiftedVsOracle, &encode_branch(&Rat::new(3, 4)), 2, 50, &mut rng)
        .map_err(|e| e.to_string())?;
    check("shifted pushforward", &shifted)?;
    let flipped = DoubleArrowSpace { relation: Relation::Lex, flipped: true };
    check("flipped parts", &bidirected_check(&flipped, &sample_grid(20), 5).verdict)?;
    Ok("all three mutations caught with re-verified witnesses".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("scheme axioms", criterion_1),
        ("coding round trip", criterion_2),
        ("order correspondence", criterion_3),
        ("rsubtree/rsequences brute force", criterion_4),
        ("cut identity", criterion_5),
        ("image identity", criterion_6),
        ("double-arrow bidirectedness", criterion_7),
        ("technical lemma witnesses", criterion_8),
        ("diagonalizer demonstration", criterion_9),
        ("mutation sensitivity", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = f();
        let t = start.elapsed();
        match r {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({t:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} ({t:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
