//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Reference values (growth numbers, equality) come from the rewriting
//! oracle, which never calls the normal-form code.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use gpcube::cli::{certificate, certificate_json, Which};
use gpcube::dj::DjSetup;
use gpcube::morse::check_morse;
use gpcube::oracle::closure;
use gpcube::{parse_graph, CosetComplex, CubeBall, GraphProduct, LabeledGraph, Letter, Order, Word};
use petgraph::unionfind::UnionFind;

const FIXTURES: [&str; 8] = ["line", "z2", "z3", "f2", "zz", "dihedral", "pentagon", "mixed"];
const BUDGET: usize = 1_000_000;
const WORD_BUDGET: usize = 100_000;

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(format!("{name}.graph"))
}

fn fixture(name: &str) -> LabeledGraph {
    parse_graph(&std::fs::read_to_string(fixture_path(name)).unwrap()).unwrap()
}

fn ball(g: &LabeledGraph, r: u64) -> CubeBall {
    CosetComplex::new(g.clone()).unwrap().build_ball(r, BUDGET).unwrap()
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// All words with at most `max_len` letters from `alphabet`.
fn words(alphabet: &[Letter], max_len: usize) -> Vec<Vec<Letter>> {
    let mut all = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in alphabet {
                let mut v: Vec<Letter> = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all
}

/// Union-find over words that share a closure word; the oracle's notion of
/// equality, restricted to the given list.
fn oracle_classes(g: &LabeledGraph, ws: &[Vec<Letter>]) -> (UnionFind<usize>, Vec<HashSet<Vec<Letter>>>) {
    let closures: Vec<HashSet<Vec<Letter>>> = ws
        .iter()
        .map(|w| closure(g, &Word(w.clone()), WORD_BUDGET).unwrap())
        .collect();
    let mut first: HashMap<&Vec<Letter>, usize> = HashMap::new();
    let mut uf = UnionFind::new(ws.len());
    for (i, c) in closures.iter().enumerate() {
        for x in c {
            match first.get(x) {
                Some(&j) => {
                    uf.union(i, j);
                }
                None => {
                    first.insert(x, i);
                }
            }
        }
    }
    (uf, closures)
}

fn oracle_equivalence() -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for name in FIXTURES {
        let g = fixture(name);
        let group = GraphProduct::new(g.clone());
        let alphabet: Vec<Letter> = (0..g.len())
            .flat_map(|s| (-2..=2).map(move |e| Letter::new(s, e)))
            .collect();
        let ws = words(&alphabet, 3);
        let classes: Vec<_> = ws
            .iter()
            .map(|w| group.normalize(&Word(w.clone())).unwrap())
            .collect();

        // Pairwise relation "closures meet", compared exactly with equality
        // of normal forms: through each closure word, all words containing
        // it must share a normal form, and each word must meet every word
        // of its class.
        let (_, closures) = oracle_classes(&g, &ws);
        let mut index: HashMap<&Vec<Letter>, Vec<usize>> = HashMap::new();
        for (i, c) in closures.iter().enumerate() {
            for x in c {
                index.entry(x).or_default().push(i);
            }
        }
        let mut class_size: HashMap<_, usize> = HashMap::new();
        for c in &classes {
            *class_size.entry(c).or_default() += 1;
        }
        let mut disagreements = 0usize;
        for members in index.values() {
            if members.iter().any(|&i| classes[i] != classes[members[0]]) {
                disagreements += 1;
            }
        }
        for (i, c) in closures.iter().enumerate() {
            let mut met: HashSet<usize> = HashSet::new();
            for x in c {
                met.extend(index[x].iter().copied());
            }
            let same_class = met.iter().filter(|&&j| classes[j] == classes[i]).count();
            if same_class != class_size[&classes[i]] {
                disagreements += 1;
            }
        }
        ok &= disagreements == 0;
        let n = ws.len();
        details.push(format!("{name}: {n} words, {} pairs, {disagreements} disagreements", n * (n - 1) / 2));
    }
    outcome(ok, details.join("; "))
}

fn growth() -> Outcome {
    let expected: [(&str, [usize; 3]); 3] = [("f2", [1, 5, 17]), ("zz", [1, 5, 13]), ("dihedral", [1, 3, 5])];
    let mut ok = true;
    let mut details = Vec::new();
    for (name, want) in expected {
        let g = fixture(name);
        // Unit generators: s^±1 for infinite s, u^k for finite u.
        let units: Vec<Letter> = (0..g.len())
            .flat_map(|s| match g.order(s) {
                Order::Infinite => vec![Letter::new(s, 1), Letter::new(s, -1)],
                Order::Finite(c) => (1..c as i64).map(|k| Letter::new(s, k)).collect(),
            })
            .collect();
        let ws = words(&units, 2);
        let (uf, _) = oracle_classes(&g, &ws);
        let mut min_len: BTreeMap<usize, usize> = BTreeMap::new();
        for (i, w) in ws.iter().enumerate() {
            let root = uf.find(i);
            let e = min_len.entry(root).or_insert(w.len());
            *e = (*e).min(w.len());
        }
        let oracle: Vec<usize> = (0..3).map(|r| min_len.values().filter(|&&l| l <= r).count()).collect();
        let group = GraphProduct::new(g);
        let computed: Vec<usize> = (0..3u64).map(|r| group.enumerate_ball(r, BUDGET).unwrap().len()).collect();
        ok &= oracle == want && computed == want;
        details.push(format!("{name}: oracle {oracle:?}, normal forms {computed:?}, expected {want:?}"));
    }
    outcome(ok, details.join("; "))
}

fn real_line() -> Outcome {
    let b = ball(&fixture("line"), 3);
    let edges: Vec<_> = b.cubes_of_dim(1).collect();
    let mut degree = vec![0usize; b.len()];
    for e in &edges {
        degree[e.bottom] += 1;
        degree[e.top] += 1;
    }
    // Connected with |V| - |E| = 1 and degrees ≤ 2: a simple path.
    let mut uf = UnionFind::new(b.len());
    for e in &edges {
        uf.union(e.bottom, e.top);
    }
    let connected = (0..b.len()).all(|v| uf.equiv(0, v));
    let is_path = b.dimension() == 1
        && connected
        && b.len() == edges.len() + 1
        && degree.iter().all(|&d| d <= 2)
        && degree.iter().filter(|&&d| d == 1).count() == 2;
    let singles: Vec<usize> = b
        .interior_vertices()
        .filter(|&v| b.vertex(v).clique.is_empty())
        .collect();
    let degrees_ok = !singles.is_empty() && singles.iter().all(|&v| degree[v] == 2);
    outcome(
        is_path && degrees_ok,
        format!(
            "{} vertices, {} edges, path: {is_path}, {} interior singletons all of degree 2: {degrees_ok}",
            b.len(),
            edges.len(),
            singles.len()
        ),
    )
}

fn flag_links() -> Outcome {
    let mut total = 0;
    let mut flag = 0;
    let mut full = 0;
    for name in FIXTURES {
        let b = ball(&fixture(name), 2);
        for v in b.interior_vertices() {
            let c = b.check_link(v).unwrap();
            total += 1;
            flag += c.flag as usize;
            full += c.all() as usize;
        }
    }
    outcome(
        total > 0 && flag == total && full == total,
        format!("{flag}/{total} interior links flag; {full}/{total} pass join and isomorphism checks"),
    )
}

fn morse() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for name in FIXTURES {
        let r = 3;
        let rep = check_morse(&ball(&fixture(name), r)).unwrap();
        let nonvacuous = rep.down_link_checked > 0 && rep.up_link_checked > 0 && rep.sublevels_checked > 0;
        ok &= rep.pass() && nonvacuous;
        details.push(format!(
            "{name} r={r}: {} cubes, {} down-link, {} up-link, {} sublevels, pass {}",
            rep.cubes_checked,
            rep.down_link_checked,
            rep.up_link_checked,
            rep.sublevels_checked,
            rep.pass()
        ));
    }
    outcome(ok, details.join("; "))
}

fn specialness() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for name in FIXTURES {
        let rep = ball(&fixture(name), 2).check_special().unwrap();
        ok &= rep.pass() && rep.labels_and_orientation.checked > 0;
        details.push(format!(
            "{name}: {} hyperplanes ({} truncated), pass {}",
            rep.hyperplanes,
            rep.truncated_hyperplanes,
            rep.pass()
        ));
    }
    // Negative control: F₂ with one edge relabelled to collide with a
    // neighbour at an interior vertex.
    let b = ball(&fixture("f2"), 2);
    let mut st = b.special_structure().unwrap();
    let v = b.interior_vertices().next().unwrap();
    let at_v: Vec<usize> = (0..st.edges.len())
        .filter(|&e| st.edges[e].bottom == v || st.edges[e].top == v)
        .collect();
    st.edges[at_v[1]].label = st.edges[at_v[0]].label;
    let control = st.check();
    let control_fails = !control.self_crossing_and_osculation.pass();
    ok &= control_fails;
    details.push(format!("negative control fails condition (ii): {control_fails}"));
    outcome(ok, details.join("; "))
}

fn kernel() -> Outcome {
    let mut ok = true;
    let mut vertices = 0;
    for name in FIXTURES {
        let rep = ball(&fixture(name), 2).kernel_report();
        vertices += rep.vertices_checked;
        ok &= rep.pass();
    }
    outcome(ok, format!("{vertices} vertices over {} fixtures, stabilizer ∩ kernel trivial: {ok}", FIXTURES.len()))
}

fn davis_januszkiewicz() -> Outcome {
    let mut ok = true;
    let mut details = Vec::new();
    for name in FIXTURES {
        let dj = DjSetup::new(fixture(name)).unwrap();
        let b4 = dj.gamma().enumerate_ball(4, BUDGET).unwrap();
        let beta: HashSet<_> = b4.iter().map(|g| dj.beta(g).unwrap()).collect();
        let p4 = dj.prime().enumerate_ball(4, BUDGET).unwrap();
        let alpha: HashSet<_> = p4.iter().map(|g| dj.alpha(g).unwrap()).collect();
        let injective = beta.len() == b4.len() && alpha.len() == p4.len();

        let mut factor_ok = true;
        let mut fibers = HashSet::new();
        let ball3 = dj.dprime().enumerate_ball(3, BUDGET).unwrap();
        for x in &ball3 {
            match (dj.factorize(x), dj.factorize_alpha(x)) {
                (Ok((_, e)), Ok((_, ea))) => {
                    factor_ok &= dj.factorization_unique(x, e).unwrap()
                        && dj.factorization_unique_alpha(x, ea).unwrap();
                    fibers.insert(e);
                }
                _ => factor_ok = false,
            }
        }
        let fibers_ok = fibers.len() == 1 << dj.e_rank();
        let weirds = (0..dj.gamma().graph().len())
            .filter(|&s| !dj.gamma().graph().order(s).is_finite())
            .all(|s| dj.weirds_check(s).unwrap());
        let iso = dj.iso_check(2, BUDGET).unwrap();
        let pass = injective && factor_ok && fibers_ok && weirds && iso.pass();
        ok &= pass;
        details.push(format!(
            "{name}: injective {injective}, {} factorized, fibers {}/{}, eq2 {weirds}, iso r=2 {} ({} Y-vertices)",
            ball3.len(),
            fibers.len(),
            1 << dj.e_rank(),
            iso.pass(),
            iso.y_vertices
        ));
    }
    outcome(ok, details.join("; "))
}

fn determinism() -> Outcome {
    let mut ok = true;
    for name in FIXTURES {
        let g = fixture(name);
        let a = certificate_json(&certificate(&g, 2, BUDGET, Which::All).unwrap());
        let b = certificate_json(&certificate(&g, 2, BUDGET, Which::All).unwrap());
        let (b1, b2) = (ball(&g, 2), ball(&g, 2));
        ok &= a == b && b1.to_json() == b2.to_json() && b1.to_dot() == b2.to_dot();
    }
    let bin = env!("CARGO_BIN_EXE_gpcube");
    let run = |name: &str| {
        Command::new(bin)
            .args(["check", "all", "--radius", "2", "--graph"])
            .arg(fixture_path(name))
            .output()
            .unwrap()
    };
    let mut cli_ok = true;
    for name in ["pentagon", "mixed"] {
        let (x, y) = (run(name), run(name));
        cli_ok &= x.status.code() == Some(0) && x.stdout == y.stdout && !x.stdout.is_empty();
    }
    outcome(
        ok && cli_ok,
        format!("library certificates and exports byte-identical: {ok}; CLI reruns byte-identical: {cli_ok}"),
    )
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("word problem agrees with the rewriting oracle", oracle_equivalence),
        ("growth numbers", growth),
        ("real line", real_line),
        ("flag links", flag_links),
        ("Morse certificates", morse),
        ("specialness", specialness),
        ("kernel acts freely", kernel),
        ("Davis-Januszkiewicz embedding", davis_januszkiewicz),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {name} ({:.1}s): {}", start.elapsed().as_secs_f64(), o.detail);
        failed += !o.pass as usize;
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
