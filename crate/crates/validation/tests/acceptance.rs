//! Acceptance run. Prints one PASS/FAIL line per criterion, with the
//! failing checks listed underneath, and exits non-zero if any criterion
//! fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use franklin::lines::family_lines;
use franklin::pattern::expand_quotient;
use franklin::*;
use franklin_validation as oracle;
use franklin_validation::Grid;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

// Wall-clock limits per criterion.
const DECOMPOSITION_LIMIT: Duration = Duration::from_secs(1);
const VERIFIER_LIMIT: Duration = Duration::from_secs(1);
const COMPOSITION_LIMIT: Duration = Duration::from_secs(5);
const ORDER_4_LIMIT: Duration = Duration::from_secs(60);
const ORDER_2_LIMIT: Duration = Duration::from_secs(1);

const ORDER_8_FIRST_BUDGET: u64 = 200_000_000;
const RANDOM_GRIDS: usize = 1000;
const RNG_SEED: u64 = 0x5eed_f8a7;

#[derive(Default)]
struct Checks {
    items: Vec<(String, bool, String)>,
}

impl Checks {
    fn check(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.items.push((name.into(), ok, detail.into()));
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: impl Into<String>, got: T, want: T) {
        let detail = if got == want {
            String::new()
        } else {
            format!("got {got:?}, want {want:?}")
        };
        self.check(name, got == want, detail);
    }

    fn within(&mut self, name: &str, elapsed: Duration, limit: Duration) {
        self.check(
            format!("{name} within {limit:?}"),
            elapsed <= limit,
            format!("took {elapsed:?}"),
        );
    }
}

fn grid(sq: &Square) -> Grid {
    sq.to_rows()
}

fn square(name: &str) -> &'static Square {
    fixture(name).unwrap().square().unwrap()
}

fn pair(name: &str) -> &'static AuxPair {
    fixture(name).unwrap().pair().unwrap()
}

fn summary(failures: &[String]) -> String {
    match failures {
        [] => "no failing lines".to_string(),
        [first, ..] => format!("{} failing lines, first: {first}", failures.len()),
    }
}

fn decomposition_goldens(c: &mut Checks) {
    let start = Instant::now();
    let goldens = [
        "f8_1769",
        "f8_pandiagonal",
        "f8_third",
        "f8_schindel_2574",
        "f16_1769",
        "f16_pandiagonal",
        "m6_franklin_1769",
        "m6_euler",
        "m6_xian",
    ];
    for name in goldens {
        let printed = pair(&format!("{name}_aux"));
        let got = decompose(square(name)).unwrap();
        c.check(
            format!("decompose({name}) matches print"),
            &got == printed,
            "",
        );
        let (q, r) = oracle::decompose(&grid(square(name)));
        c.check(
            format!("reference decomposition of {name} matches print"),
            q == grid(printed.quotient()) && r == grid(printed.remainder()),
            "",
        );
    }
    c.within("decompositions", start.elapsed(), DECOMPOSITION_LIMIT);
}

fn verifier_claims(c: &mut Checks) {
    let start = Instant::now();

    let m6 = square("m6_franklin_1769");
    let labels = classify(m6).labels;
    c.check(
        "order-6 Franklin square is natural and semi-magic at 111",
        labels.contains(&Label::Natural)
            && labels.contains(&Label::SemiMagic)
            && oracle::is_natural(&grid(m6))
            && oracle::row_sums(&grid(m6)).iter().all(|&s| s == 111),
        format!("{labels:?}"),
    );
    c.check(
        "order-6 Franklin square is not Franklin",
        !labels.contains(&Label::Franklin),
        "",
    );

    let aux = pair("m6_franklin_1769_aux");
    for (half, sq, want) in [
        ("Q", aux.quotient(), [16, 14]),
        ("R", aux.remainder(), [9, 21]),
    ] {
        let sums = oracle::column_sums(&grid(sq));
        let off: Vec<usize> = (0..6).filter(|&c| sums[c] != 15).collect();
        c.eq(
            format!("{half} columns off target (0-based)"),
            off,
            vec![1, 4],
        );
        c.eq(
            format!("{half} off-target column sums"),
            [sums[1], sums[4]],
            want,
        );
        let report = verify(sq, &IndexTargets::balanced(6)).unwrap();
        c.eq(
            format!("verifier flags the same {half} columns"),
            report
                .condition(Condition::Columns)
                .failing_shifts(LineFamily::Column),
            vec![1, 4],
        );
    }

    for name in ["m6_euler_aux", "m6_xian_aux"] {
        let p = pair(name);
        for (half, sq) in [("Q", p.quotient()), ("R", p.remainder())] {
            let report = verify(sq, &IndexTargets::balanced(6)).unwrap();
            let failures = oracle::magic_failures(&grid(sq), 15);
            c.check(
                format!("{name} {half} is magic at 15"),
                report.flags.magic && failures.is_empty(),
                summary(&failures),
            );
        }
    }

    let f13 = square("f8_pandiagonal");
    let report = verify(f13, &IndexTargets::natural(8)).unwrap();
    for cond in [
        Condition::BentDown,
        Condition::BentUp,
        Condition::BentRight,
        Condition::BentLeft,
        Condition::Subsquares,
    ] {
        c.check(
            format!("f8_pandiagonal passes {}", cond.as_str()),
            report.passed(cond),
            "",
        );
    }
    c.check(
        "f8_pandiagonal fails half-lines",
        !report.passed(Condition::HalfLines),
        "",
    );
    let half_failures = oracle::franklin_failures(&grid(f13), 260)
        .into_iter()
        .filter(|f| f.contains("half"))
        .count();
    c.check(
        "reference also finds half-line failures",
        half_failures > 0,
        "",
    );

    let third = pair("f8_third_aux");
    let q_report = verify(third.quotient(), &IndexTargets::balanced(8)).unwrap();
    let r_report = verify(third.remainder(), &IndexTargets::balanced(8)).unwrap();
    c.check(
        "f8_third Q is pandiagonal",
        q_report.flags.pandiagonal
            && oracle::pandiagonal_failures(&grid(third.quotient()), 28).is_empty(),
        "",
    );
    c.check(
        "f8_third R is not pandiagonal",
        !r_report.flags.pandiagonal
            && !oracle::pandiagonal_failures(&grid(third.remainder()), 28).is_empty(),
        "",
    );

    let schindel = square("f8_schindel_2574");
    let flags = verify(schindel, &IndexTargets::natural(8)).unwrap().flags;
    let g = grid(schindel);
    c.check(
        "f8_schindel_2574 is pandiagonal Franklin",
        flags.pandiagonal_franklin
            && oracle::franklin_failures(&g, 260).is_empty()
            && oracle::pandiagonal_failures(&g, 260).is_empty(),
        "",
    );
    let sp = pair("f8_schindel_2574_aux");
    for (half, sq) in [("Q", sp.quotient()), ("R", sp.remainder())] {
        let flags = verify(sq, &IndexTargets::balanced(8)).unwrap().flags;
        let g = grid(sq);
        c.check(
            format!("f8_schindel_2574 {half} is pandiagonal Franklin"),
            flags.pandiagonal_franklin
                && oracle::franklin_failures(&g, 28).is_empty()
                && oracle::pandiagonal_failures(&g, 28).is_empty(),
            "",
        );
    }
    c.within("verifier claims", start.elapsed(), VERIFIER_LIMIT);
}

fn composition_goldens(c: &mut Checks) {
    let start = Instant::now();
    c.eq(
        "compose(f8_1769 pair) = f8_1769",
        compose(pair("f8_1769_aux")).unwrap(),
        square("f8_1769").clone(),
    );

    let m24 = compose(pair("q24_r24")).unwrap();
    let flags = verify(&m24, &IndexTargets::natural(24)).unwrap().flags;
    c.eq("order-24 index number", magic_constant(24), 6924);
    c.check(
        "composed order-24 square is natural Franklin at 6924",
        flags.natural && flags.franklin && oracle::is_natural(&grid(&m24)),
        "",
    );
    let failures = oracle::franklin_failures(&grid(&m24), 6924);
    c.check(
        "reference agrees at order 24",
        failures.is_empty(),
        summary(&failures),
    );
    c.eq("order-24 corner cell", m24.get(0, 0), 444);

    let f40 = square("f40");
    let flags = verify(f40, &IndexTargets::natural(40)).unwrap().flags;
    c.eq("order-40 index number", magic_constant(40), 32020);
    c.check(
        "order-40 square is natural Franklin",
        flags.natural && flags.franklin,
        "",
    );
    let failures = oracle::franklin_failures(&grid(f40), 32020);
    c.check(
        "reference agrees at order 40",
        failures.is_empty(),
        summary(&failures),
    );
    let aux = decompose(f40).unwrap();
    c.eq(
        "order-40 corner decomposes to (30, 19)",
        (aux.quotient().get(0, 0), aux.remainder().get(0, 0)),
        (30, 19),
    );
    for (half, sq) in [("Q", aux.quotient()), ("R", aux.remainder())] {
        let flags = verify(sq, &IndexTargets::balanced(40)).unwrap().flags;
        let failures = oracle::franklin_failures(&grid(sq), 780);
        c.check(
            format!("order-40 {half} is Franklin at 780"),
            flags.franklin && failures.is_empty(),
            summary(&failures),
        );
    }
    c.within("compositions", start.elapsed(), COMPOSITION_LIMIT);
}

fn generator_reproduction(c: &mut Checks) {
    for name in ["f8_1769", "f8_pandiagonal", "f16_1769", "f16_pandiagonal"] {
        c.eq(
            format!("preset {name} reproduces print"),
            preset(name).unwrap(),
            Preset::Square(square(name).clone()),
        );
    }
    c.eq(
        "preset q24_r24 reproduces the order-24 pair",
        preset("q24_r24").unwrap(),
        Preset::Pair(pair("q24_r24").clone()),
    );
    for (n, name) in [(8, "f8_1769_aux"), (16, "f16_1769_aux"), (24, "q24_r24")] {
        let first_row: Vec<usize> = pair(name)
            .quotient()
            .row(0)
            .iter()
            .map(|&v| v as usize)
            .collect();
        c.eq(
            format!("canonical row seed at order {n}"),
            canonical_row_seed(n).unwrap(),
            first_row,
        );
    }
}

fn new_square_claims(c: &mut Checks) {
    let sq = square("f16_new_pandiagonal");
    let g = grid(sq);
    let flags = verify(sq, &IndexTargets::natural(16)).unwrap().flags;
    c.eq("order-16 index number", magic_constant(16), 2056);
    c.check(
        "new order-16 pandiagonal square is natural",
        flags.natural && oracle::is_natural(&g),
        "",
    );
    c.check(
        "new order-16 square is pandiagonal",
        flags.pandiagonal && oracle::pandiagonal_failures(&g, 2056).is_empty(),
        summary(&oracle::pandiagonal_failures(&g, 2056)),
    );
    let failures = oracle::franklin_failures(&g, 2056);
    c.check(
        "new order-16 square is Franklin",
        flags.franklin && failures.is_empty(),
        summary(&failures),
    );

    let second = square("f16_new_second");
    let flags = verify(second, &IndexTargets::natural(16)).unwrap().flags;
    let failures = oracle::franklin_failures(&grid(second), 2056);
    c.check(
        "second new order-16 square is natural Franklin",
        flags.natural && flags.franklin && failures.is_empty(),
        summary(&failures),
    );
}

fn search_claims(c: &mut Checks) {
    let start = Instant::now();
    let out = search_natural_franklin(&SearchOptions::new(4).workers(4)).unwrap();
    c.within("order-4 enumeration", start.elapsed(), ORDER_4_LIMIT);
    c.eq(
        "order-4 count and exhaustion",
        (out.count, out.exhausted),
        (0, true),
    );

    let start = Instant::now();
    let out = search_natural_franklin(&SearchOptions::new(2)).unwrap();
    c.within("order-2 enumeration", start.elapsed(), ORDER_2_LIMIT);
    c.eq(
        "order-2 count and exhaustion",
        (out.count, out.exhausted),
        (0, true),
    );

    let opts = SearchOptions::new(8)
        .mode(SearchMode::First)
        .node_budget(Some(ORDER_8_FIRST_BUDGET))
        .workers(4);
    let out = search_natural_franklin(&opts).unwrap();
    c.check(
        format!("order-8 witness within {ORDER_8_FIRST_BUDGET} nodes"),
        out.count == 1 && out.witnesses.len() == 1,
        format!("{} nodes visited", out.nodes_visited),
    );
    if let Some(w) = out.witnesses.first() {
        let g = grid(w);
        let failures = oracle::franklin_failures(&g, 260);
        c.check(
            "order-8 witness re-verifies",
            oracle::is_natural(&g) && failures.is_empty(),
            summary(&failures),
        );
    }
}

// The four order-6 symbol tableaux: each symbol marks the cells of one line
// of the family. Symbols: S spade, D diamond, C club, H heart, A up
// triangle, V down triangle.
const TABLEAUX: [(LineFamily, [&str; 6]); 4] = [
    (
        LineFamily::BentRight,
        ["SDCHAV", "VSDCHA", "AVSDCH", "AVSDCH", "VSDCHA", "SDCHAV"],
    ),
    (
        LineFamily::BentLeft,
        ["SDCHAV", "DCHAVS", "CHAVSD", "CHAVSD", "DCHAVS", "SDCHAV"],
    ),
    (
        LineFamily::BentUp,
        ["SHCCHS", "HCDDCH", "CDAADC", "DAVVAD", "AVSSVA", "VSHHSV"],
    ),
    (
        LineFamily::BentDown,
        ["SVAAVS", "DSVVSD", "CDSSDC", "HCDDCH", "AHCCHA", "VAHHAV"],
    ),
];

fn cell_sets(
    lines: impl IntoIterator<Item = Vec<(usize, usize)>>,
) -> BTreeSet<BTreeSet<(usize, usize)>> {
    lines.into_iter().map(|l| l.into_iter().collect()).collect()
}

fn property_suites(c: &mut Checks) {
    let mut rng = StdRng::seed_from_u64(RNG_SEED);
    let mut roundtrip_failures = 0;
    for i in 0..RANDOM_GRIDS {
        let n = rng.gen_range(1..=12);
        let cells: Vec<Value> = if i % 2 == 0 {
            let mut v: Vec<Value> = (1..=(n * n) as Value).collect();
            v.shuffle(&mut rng);
            v
        } else {
            (0..n * n)
                .map(|_| rng.gen_range(1..=(n * n) as Value))
                .collect()
        };
        let sq = Square::new(n, cells).unwrap();
        let aux = decompose(&sq).unwrap();
        let (q, r) = oracle::decompose(&grid(&sq));
        if compose(&aux).unwrap() != sq || grid(aux.quotient()) != q || grid(aux.remainder()) != r {
            roundtrip_failures += 1;
        }
    }
    c.eq(
        format!("compose after decompose on {RANDOM_GRIDS} random grids"),
        roundtrip_failures,
        0,
    );

    let mut pairs: Vec<AuxPair> = Vec::new();
    for e in Corpus::embedded().unwrap().entries() {
        match e.payload() {
            Payload::Pair(p) => pairs.push(p.clone()),
            Payload::Square(sq) => pairs.push(decompose(sq).unwrap()),
        }
    }
    let mut bridge = 0;
    for p in &pairs {
        let (q, r) = (grid(p.quotient()), grid(p.remainder()));
        let composed_natural = oracle::is_natural(&oracle::compose(&q, &r));
        let premise =
            oracle::is_orthogonal(&q, &r) && oracle::is_balanced(&q) && oracle::is_balanced(&r);
        let lib = is_orthogonal(p) && is_balanced(p.quotient()) && is_balanced(p.remainder());
        if premise != composed_natural
            || lib != premise
            || is_natural(&compose(p).unwrap()) != composed_natural
        {
            bridge += 1;
        }
    }
    c.eq(
        format!(
            "orthogonal and balanced iff natural on {} fixture pairs",
            pairs.len()
        ),
        bridge,
        0,
    );

    let bents = [
        (LineFamily::BentDown, oracle::Bend::Down),
        (LineFamily::BentUp, oracle::Bend::Up),
        (LineFamily::BentRight, oracle::Bend::Right),
        (LineFamily::BentLeft, oracle::Bend::Left),
    ];
    for n in [2, 4, 6, 8, 16, 24, 40] {
        let mut ok = true;
        for (family, bend) in bents {
            let lines = family_lines(n, family).unwrap();
            let mut covered = vec![0usize; n * n];
            for line in &lines {
                for &(r, col) in line.cells() {
                    covered[r * n + col] += 1;
                }
                ok &= line.cells() == oracle::bent_cells(n, bend, line.shift()).as_slice();
            }
            ok &= lines.len() == n && covered.iter().all(|&k| k == 1);
        }
        c.check(
            format!("bent families partition the order-{n} grid"),
            ok,
            "",
        );
    }

    for (family, rows) in TABLEAUX {
        let symbols = ['S', 'D', 'C', 'H', 'A', 'V'];
        let classes = cell_sets(symbols.iter().map(|&s| {
            let mut cells = Vec::new();
            for (r, row) in rows.iter().enumerate() {
                for (col, ch) in row.chars().enumerate() {
                    if ch == s {
                        cells.push((r, col));
                    }
                }
            }
            cells
        }));
        let lines = cell_sets(
            family_lines(6, family)
                .unwrap()
                .iter()
                .map(|l| l.cells().to_vec()),
        );
        c.check(
            format!("{family} matches its order-6 tableau"),
            classes == lines,
            "",
        );
    }

    let outcomes: Vec<SearchOutcome> = [1, 2, 4]
        .iter()
        .map(|&w| search_natural_franklin(&SearchOptions::new(4).workers(w)).unwrap())
        .collect();
    c.check(
        "order-4 outcome identical for 1, 2 and 4 workers",
        outcomes.windows(2).all(|w| w[0] == w[1]),
        format!("{outcomes:?}"),
    );
}

fn unpruned_seeds(q: &Grid) -> Vec<Vec<usize>> {
    let n = q.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        let r = oracle::column_alternate(&perm);
        if oracle::is_orthogonal(q, &r)
            && oracle::franklin_failures(&r, (n * (n - 1) / 2) as i64).is_empty()
        {
            out.push(perm.clone());
        }
        let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return out;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

fn seed_search(c: &mut Checks) {
    let q = expand_quotient(&canonical_row_seed(8).unwrap(), 8).unwrap();
    let pruned = find_remainder_seeds(8, &q, None).unwrap();
    c.check(
        "order-8 seeds include the 1769 remainder seed",
        pruned.contains(&vec![3, 5, 4, 2, 6, 0, 1, 7]),
        format!("{} seeds", pruned.len()),
    );
    let reference = unpruned_seeds(&grid(&q));
    c.check(
        "pruned and unpruned seed lists agree",
        pruned == reference,
        format!("pruned {}, unpruned {}", pruned.len(), reference.len()),
    );
}

fn main() {
    let criteria: [(&str, fn(&mut Checks)); 8] = [
        ("decomposition goldens", decomposition_goldens),
        ("verifier claims", verifier_claims),
        ("composition goldens", composition_goldens),
        ("generator reproduction", generator_reproduction),
        ("new-square claims", new_square_claims),
        ("search", search_claims),
        ("property suites", property_suites),
        ("remainder seed search", seed_search),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let mut checks = Checks::default();
        let start = Instant::now();
        run(&mut checks);
        let elapsed = start.elapsed();
        let bad: Vec<_> = checks.items.iter().filter(|item| !item.1).collect();
        let verdict = if bad.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "{verdict} criterion {}: {title} ({} checks, {:.2}s)",
            i + 1,
            checks.items.len(),
            elapsed.as_secs_f64()
        );
        for (name, _, detail) in bad {
            if detail.is_empty() {
                println!("    failed: {name}");
            } else {
                println!("    failed: {name}: {detail}");
            }
        }
        failed += usize::from(verdict == "FAIL");
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
