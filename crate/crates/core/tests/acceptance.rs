//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails.

use std::collections::{BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ncsep::bounds::{band_ratio, certified_lower_bound, lower_over_cube_scale, normalize, upper_times_m_minus_2};
use ncsep::flags::{
    derive_prime_census, flag_nc4, flag_nc4_double_prime, flag_nc4_prime, is_simple_flag, FlagVectorOf,
};
use ncsep::separators::Provenance;
use ncsep::{
    best_coordinate_cut, build_ncc_graph, cartesian_product_with_cube, certify_lower_bound, coordinate_cut_separator,
    harper_boundary, level_set_separator, lift_cube_separator, lift_to_product, min_boundary_bruteforce,
    refine_separator, stacked_triangulation, truncate, verify_separator, ClusteredGraph, CubeLabeling, Graph,
    HarperProfile, SeparationConstant, Separator, TruncatedCubeGraph,
};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: Vec<String>, summary: String) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            summary
        } else {
            let shown: Vec<_> = failures.iter().take(4).cloned().collect();
            let more = failures.len().saturating_sub(4);
            let tail = if more > 0 { format!(" (+{more} more)") } else { String::new() };
            format!("{}; {}{tail}", summary, shown.join("; "))
        };
        Outcome { passed, detail }
    }
}

fn run(id: u32, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut outcome = f();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed > limit {
            outcome.passed = false;
            outcome.detail = format!("{}; runtime {elapsed:.2?} exceeds {limit:?}", outcome.detail);
        }
    }
    let verdict = if outcome.passed { "PASS" } else { "FAIL" };
    println!("[{verdict}] criterion {id}: {name} ({elapsed:.2?}) {}", outcome.detail);
    outcome.passed
}

/// The printed factored forms, evaluated independently: `(a m + b) * 2^(m-2)`.
fn printed(coefficients: [(i128, i128); 5], m: u32) -> FlagVectorOf<BigInt> {
    let scale = 1i128 << (m - 2);
    let e = |(a, b): (i128, i128)| BigInt::from((a * i128::from(m) + b) * scale);
    FlagVectorOf {
        f0: e(coefficients[0]),
        f1: e(coefficients[1]),
        f2: e(coefficients[2]),
        f3: e(coefficients[3]),
        f03: e(coefficients[4]),
    }
}

const PRINTED_NC4: [(i128, i128); 5] = [(0, 4), (2, 0), (3, -6), (1, -2), (8, -16)];
const PRINTED_PRIME: [(i128, i128); 5] = [(4, 0), (14, -24), (11, -22), (1, 2), (28, -24)];
const PRINTED_DOUBLE_PRIME: [(i128, i128); 5] = [(24, -48), (48, -96), (27, -46), (3, 2), (28, -48)];

fn flag_reproduction() -> Outcome {
    let mut failures = Vec::new();
    let mut census_mismatch: BTreeSet<&'static str> = BTreeSet::new();
    let mut example = None;
    for m in 4..=30u32 {
        let computed = [
            ("NC4", flag_nc4::<BigInt>(m), PRINTED_NC4),
            ("NC4'", flag_nc4_prime::<BigInt>(m), PRINTED_PRIME),
            ("NC4''", flag_nc4_double_prime::<BigInt>(m), PRINTED_DOUBLE_PRIME),
        ];
        for (name, fv, coefficients) in computed {
            let Ok(fv) = fv else {
                failures.push(format!("{name} m={m}: error"));
                continue;
            };
            if fv != printed(coefficients, m) {
                failures.push(format!("{name} m={m}: {fv} vs printed {}", printed(coefficients, m)));
            }
            if fv.euler_residual() != BigInt::from(0) {
                failures.push(format!("{name} m={m}: Euler residual {}", fv.euler_residual()));
            }
        }
        // The alternate printed form of the NC4 vector.
        let p = 1i128 << (m - 2);
        let mi = i128::from(m);
        let alt = [4 * p, mi * 2 * p, 3 * (mi - 2) * p, (mi - 2) * p, 8 * (mi - 2) * p];
        let fv = flag_nc4::<BigInt>(m).expect("m in range");
        if fv.entries().into_iter().zip(alt).any(|(a, b)| *a != BigInt::from(b)) {
            failures.push(format!("NC4 m={m}: alternate form differs"));
        }
        let derived = derive_prime_census::<BigInt>(m).expect("census");
        let closed = flag_nc4_prime::<BigInt>(m).expect("closed form");
        let diff = derived.differences(&closed);
        if !diff.is_empty() {
            census_mismatch.extend(diff.iter().copied());
            if example.is_none() {
                example = Some(format!("m={m}: census {derived} vs closed form {closed}"));
            }
        }
    }
    if !census_mismatch.is_empty() {
        failures.push(format!(
            "derive_prime_census differs from flag_nc4_prime on {:?} for every m, e.g. {}",
            census_mismatch,
            example.unwrap_or_default()
        ));
    }
    let m4 = flag_nc4_double_prime::<BigInt>(4).expect("m = 4");
    Outcome::new(failures, format!("m in [4, 30]; NC4''(4) = {m4}"))
}

fn simplicity() -> Outcome {
    let mut failures = Vec::new();
    for m in 4..=30u32 {
        let fv = flag_nc4_double_prime::<BigInt>(m).expect("m in range");
        if is_simple_flag(&fv, 4) != Ok(true) {
            failures.push(format!("flag m={m} not simple"));
        }
    }
    for m in 4..=12u32 {
        let h = stacked_triangulation(m as usize, u64::from(m)).expect("blueprint");
        let g = build_ncc_graph(m, &h).expect("graph");
        for v in 0..g.vertex_count() {
            let nbrs: Vec<usize> = g.neighbors(v).collect();
            let distinct: BTreeSet<usize> = nbrs.iter().copied().collect();
            if nbrs.len() != 4 || distinct.len() != 4 || distinct.contains(&v) {
                failures.push(format!("m={m}: vertex {v} has neighbors {nbrs:?}"));
                break;
            }
        }
    }
    Outcome::new(failures, "flags m in [4, 30], graphs m in [4, 12]".into())
}

fn connected(adj: &[Vec<usize>]) -> bool {
    let mut seen = vec![false; adj.len()];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

fn structure_check(g: &TruncatedCubeGraph, m: u32) -> Vec<String> {
    let mut failures = Vec::new();
    let h = g.blueprint();
    let f = 6 * m as usize - 12;
    let n = g.vertex_count();
    if n != f << m {
        failures.push(format!("n = {n}"));
    }
    let mut intra = 0usize;
    let mut per_direction = vec![0usize; m as usize];
    let mut cluster_edges: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); 1 << m];
    let mut other = 0usize;
    for u in 0..n {
        for w in g.neighbors(u) {
            if u >= w {
                continue;
            }
            let (cu, cw) = (u / f, w / f);
            if cu == cw {
                intra += 1;
                cluster_edges[cu].insert((u - cu * f, w - cw * f));
            } else if (cu ^ cw).count_ones() == 1 {
                per_direction[(cu ^ cw).trailing_zeros() as usize] += 1;
            } else {
                other += 1;
            }
        }
    }
    let inter: usize = per_direction.iter().sum();
    if intra != (9 * m as usize - 18) << m {
        failures.push(format!("intra = {intra}"));
    }
    if inter != (6 * m as usize - 12) << (m - 1) {
        failures.push(format!("inter = {inter}"));
    }
    if other != 0 {
        failures.push(format!("{other} edges between non-adjacent clusters"));
    }
    for (i, &count) in per_direction.iter().enumerate() {
        let deg = h.degree(i);
        if count != deg << (m - 1) || !(3..m as usize).contains(&deg) {
            failures.push(format!("direction {i}: {count} edges, deg {deg}"));
        }
    }
    let reference = truncate(h);
    let expected: BTreeSet<(usize, usize)> = reference.edges().collect();
    if reference.vertex_count() != f {
        failures.push(format!("truncate(H) has {} vertices", reference.vertex_count()));
    }
    for (cv, edges) in cluster_edges.iter().enumerate() {
        let mut adj = vec![Vec::new(); f];
        for &(a, b) in edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        if adj.iter().any(|l| l.len() != 3) || !connected(&adj) {
            failures.push(format!("cluster {cv} not connected 3-regular"));
            break;
        }
        if *edges != expected {
            failures.push(format!("cluster {cv} differs from truncate(H)"));
            break;
        }
    }
    failures
}

fn structure_counts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let seeds: Vec<u64> = (0..5).map(|_| rng.gen()).collect();
    let mut failures = Vec::new();
    for m in 4..=12u32 {
        for &seed in &seeds {
            let h = stacked_triangulation(m as usize, seed).expect("blueprint");
            let g = build_ncc_graph(m, &h).expect("graph");
            failures.extend(structure_check(&g, m).into_iter().map(|e| format!("m={m} seed={seed}: {e}")));
        }
    }
    Outcome::new(failures, format!("m in [4, 12], seeds {seeds:?}"))
}

/// `min |N(S)|` over all subsets of size `s`, by a direct scan of bitmasks.
fn boundary_oracle(m: u32) -> Vec<u64> {
    let size = 1usize << m;
    let mut best = vec![u64::MAX; size + 1];
    for set in 0u64..1 << size {
        let mut closed = 0u64;
        for v in 0..size {
            if set >> v & 1 == 1 {
                closed |= 1 << v;
                for i in 0..m {
                    closed |= 1 << (v ^ (1 << i));
                }
            }
        }
        let s = set.count_ones() as usize;
        let boundary = u64::from((closed & !set).count_ones());
        best[s] = best[s].min(boundary);
    }
    best
}

fn harper_oracle() -> Outcome {
    let mut failures = Vec::new();
    for m in 2..=4u32 {
        let oracle = boundary_oracle(m);
        for s in 0..=1u64 << m {
            let closed = harper_boundary(m, s);
            let brute = min_boundary_bruteforce(m, s);
            if closed != brute || closed != Ok(oracle[s as usize]) {
                failures.push(format!("m={m} s={s}: {closed:?} vs {brute:?} vs {}", oracle[s as usize]));
            }
        }
    }
    Outcome::new(failures, "m in [2, 4], all s".into())
}

fn upper_bound() -> Outcome {
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for m in 4..=14u32 {
        let h = stacked_triangulation(m as usize, 7 * u64::from(m)).expect("blueprint");
        let g = build_ncc_graph(m, &h).expect("graph");
        let sep = best_coordinate_cut(&g);
        let report = verify_separator(&g, &sep);
        if sep.constant != SeparationConstant::one_third() || !report.is_valid() {
            failures.push(format!("m={m}: {report}"));
        }
        if sep.size() >= 3 << m || sep.size() != 3 << (m - 1) {
            failures.push(format!("m={m}: |C| = {}", sep.size()));
        }
        sizes.push(sep.size());
    }
    Outcome::new(failures, format!("|C| for m in [4, 14] = {sizes:?}"))
}

fn check_sound(g: &TruncatedCubeGraph, sep: &Separator, label: &str, failures: &mut Vec<String>) -> usize {
    let report = verify_separator(g, sep);
    if !report.is_valid() {
        failures.push(format!("{label}: invalid separator: {report}"));
        return 0;
    }
    match certify_lower_bound(g, sep, None) {
        Ok(cert) if cert.certified_bound <= sep.size() as u64 => 1,
        Ok(cert) => {
            failures.push(format!("{label}: bound {} > |C| = {}", cert.certified_bound, sep.size()));
            0
        }
        Err(e) => {
            failures.push(format!("{label}: {e}"));
            0
        }
    }
}

fn injected_failures(g: &TruncatedCubeGraph, m: u32, failures: &mut Vec<String>) -> usize {
    let sep = best_coordinate_cut(g);
    let mut rejected = 0;

    // A C-vertex moved into A next to its B-neighbor.
    let b: BTreeSet<usize> = sep.b.iter().copied().collect();
    let moved = sep.c.iter().copied().find(|&v| g.neighbors(v).any(|w| b.contains(&w)));
    match moved {
        Some(v) => {
            let a: Vec<usize> = sep.a.iter().copied().chain([v]).collect();
            let c: Vec<usize> = sep.c.iter().copied().filter(|&x| x != v).collect();
            let bad = Separator::new(a, sep.b.clone(), c, sep.constant, Provenance::method("tampered"));
            if verify_separator(g, &bad).is_valid() {
                failures.push(format!("m={m}: A-B edge accepted"));
            } else {
                rejected += 1;
            }
        }
        None => failures.push(format!("m={m}: no C-vertex with a B-neighbor")),
    }

    // Half of A merged into C keeps separation but breaks balance.
    let half = sep.a.len() / 2;
    let c: Vec<usize> = sep.c.iter().chain(&sep.a[half..]).copied().collect();
    let bad = Separator::new(sep.a[..half].to_vec(), sep.b.clone(), c, sep.constant, Provenance::method("tampered"));
    if verify_separator(g, &bad).is_valid() {
        failures.push(format!("m={m}: unbalanced separator accepted"));
    } else {
        rejected += 1;
    }

    // A demanding constant on an otherwise valid split.
    let strict = sep.clone().with_constant(SeparationConstant::new(49, 100).expect("constant"));
    if verify_separator(g, &strict).is_valid() {
        failures.push(format!("m={m}: c = 49/100 accepted"));
    } else {
        rejected += 1;
    }
    rejected
}

fn certification_soundness() -> Outcome {
    let mut failures = Vec::new();
    let mut certified = 0;
    let mut rejected = 0;
    for m in 4..=12u32 {
        let h = stacked_triangulation(m as usize, 100 + u64::from(m)).expect("blueprint");
        let g = build_ncc_graph(m, &h).expect("graph");
        for i in 0..m as usize {
            let sep = coordinate_cut_separator(&g, i).expect("direction");
            certified += check_sound(&g, &sep, &format!("m={m} coordinate {i}"), &mut failures);
        }
        for k in 1..m {
            let cube_sep = level_set_separator(m, k).expect("level");
            let labeling = CubeLabeling::from_cube_separator(m, &cube_sep).expect("labeling");
            let sep = lift_cube_separator(&g, &labeling, None).expect("lift");
            certified += check_sound(&g, &sep, &format!("m={m} level {k}"), &mut failures);
            if k == m / 2 {
                let refined = refine_separator(&g, &sep, 3, u64::from(m));
                certified += check_sound(&g, &refined, &format!("m={m} refined level {k}"), &mut failures);
            }
        }
        let refined = refine_separator(&g, &best_coordinate_cut(&g), 3, u64::from(m));
        certified += check_sound(&g, &refined, &format!("m={m} refined cut"), &mut failures);
        rejected += injected_failures(&g, m, &mut failures);
    }
    Outcome::new(failures, format!("{certified} separators certified, {rejected} injected faults rejected"))
}

fn asymptotic_trend() -> Outcome {
    let c = SeparationConstant::one_third();
    let mut lower_seq = Vec::new();
    let mut upper_seq = Vec::new();
    let mut upper_ln = Vec::new();
    let mut lower_ln = Vec::new();
    let mut failures = Vec::new();
    for m in 6..=16u32 {
        let profile = HarperProfile::new(m).expect("profile");
        let lower = certified_lower_bound(&profile, c, c.half()).expect("bound");
        let h = stacked_triangulation(m as usize, u64::from(m)).expect("blueprint");
        let g = build_ncc_graph(m, &h).expect("graph");
        let upper = best_coordinate_cut(&g).size() as u64;
        let n = g.vertex_count() as u64;
        lower_seq.push(lower_over_cube_scale::<f64>(lower, m));
        upper_seq.push(upper_times_m_minus_2::<f64>(upper, m));
        lower_ln.push(normalize::<f64>(lower, n, 1.5));
        upper_ln.push(normalize::<f64>(upper, n, 1.0));
    }
    let band = |name: &str, values: &[f64], failures: &mut Vec<String>| {
        let ratio = band_ratio(values).unwrap_or(f64::INFINITY);
        if ratio > 3.0 {
            failures.push(format!("{name} spans a factor {ratio:.3} > 3 ({:.3}..{:.3})", values[0], values[values.len() - 1]));
        }
        ratio
    };
    let r_lower = band("certified*sqrt(m)/2^m", &lower_seq, &mut failures);
    let r_upper = band("upper*(m-2)/2^m", &upper_seq, &mut failures);
    let info_upper = band_ratio(&upper_ln).unwrap_or(f64::INFINITY);
    let info_lower = band_ratio(&lower_ln).unwrap_or(f64::INFINITY);
    Outcome::new(
        failures,
        format!(
            "m in [6, 16]: lower band {r_lower:.3}, upper band {r_upper:.3}; \
             for information, upper*ln(n)/n band {info_upper:.3}, lower*ln(n)^1.5/n band {info_lower:.3}"
        ),
    )
}

fn product_extension() -> Outcome {
    let mut failures = Vec::new();
    for m in 4..=8u32 {
        let h = stacked_triangulation(m as usize, 3 * u64::from(m)).expect("blueprint");
        let g = build_ncc_graph(m, &h).expect("graph");
        let sep = best_coordinate_cut(&g);
        let base_cert = certify_lower_bound(&g, &sep, None).expect("base certificate");
        for k in 1..=3u32 {
            let p = cartesian_product_with_cube(&g, k).expect("product");
            let label = format!("m={m} k={k}");
            if p.vertex_count() != g.vertex_count() << k {
                failures.push(format!("{label}: n = {}", p.vertex_count()));
            }
            if (0..p.vertex_count()).any(|v| p.neighbors(v).collect::<BTreeSet<_>>().len() != 4 + k as usize) {
                failures.push(format!("{label}: not {}-regular", 4 + k));
            }
            if p.fiber_size() != (6 * m as usize - 12) << k {
                failures.push(format!("{label}: fiber {}", p.fiber_size()));
            }
            let lifted = lift_to_product(&p, &sep);
            let report = verify_separator(&p, &lifted);
            if !report.is_valid() || lifted.size() != sep.size() << k {
                failures.push(format!("{label}: lifted |C| = {}, {report}", lifted.size()));
            }
            match certify_lower_bound(&p, &lifted, None) {
                Ok(cert) => {
                    let same = (cert.c_cluster_count, cert.certified_bound, cert.linear_threshold, cert.harper_bound)
                        == (
                            base_cert.c_cluster_count,
                            base_cert.certified_bound,
                            base_cert.linear_threshold,
                            base_cert.harper_bound,
                        )
                        && cert.verdict == base_cert.verdict;
                    if !same {
                        failures.push(format!("{label}: certificate {cert:?} vs base {base_cert:?}"));
                    }
                }
                Err(e) => failures.push(format!("{label}: {e}")),
            }
        }
    }
    Outcome::new(failures, "m in [4, 8], k in [1, 3]".into())
}

#[test]
fn acceptance() {
    let results = [
        run(1, "flag-vector reproduction", Some(Duration::from_secs(1)), flag_reproduction),
        run(2, "simplicity", Some(Duration::from_secs(60)), simplicity),
        run(3, "structure counts", None, structure_counts),
        run(4, "Harper oracle equivalence", Some(Duration::from_secs(120)), harper_oracle),
        run(5, "upper bound", Some(Duration::from_secs(300)), upper_bound),
        run(6, "lower-bound certification soundness", None, certification_soundness),
        run(7, "asymptotic trend", Some(Duration::from_secs(600)), asymptotic_trend),
        run(8, "product extension", None, product_extension),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, &ok)| !ok).map(|(i, _)| i + 1).collect();
    println!("acceptance: {} of {} criteria pass", results.len() - failed.len(), results.len());
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
