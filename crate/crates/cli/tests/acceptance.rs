//! Acceptance suite. Prints one PASS / FAIL / SKIPPED-DATASET line per criterion
//! and exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config as PropConfig, TestRunner};
use rrgbench::baselines::{gen_constant, DEFAULT_CONSTANT_REPORT};
use rrgbench::corpus::{load_corpus, text_to_scoring_tokens};
use rrgbench::harness::{
    published, run_benchmark, BaselineSpec, Evaluator, MetricConfig, ScoreTable, SEED_ENV,
};
use rrgbench::labeler::{
    auc_macro, normal_sentence_fraction, BinaryLabels, UncertainPolicy, DISEASE_COUNT,
};
use rrgbench::metrics::{bleu, cider_d, lcs_length, rouge_l, CiderParams, DEFAULT_BETA};
use rrgbench::synth::SyntheticConfig;
use rrgbench::{BenchmarkConfig, Corpus, CorpusFormat, Lexicon, TokenizerConfig};

/// Corpus file (JSON lines or TSV with a train/test split) for the dataset-gated checks.
const IU_CORPUS_ENV: &str = "RRGBENCH_IU_XRAY";
/// Optional feature CSV for the same corpus; enables the nearest-neighbor check.
const IU_FEATURES_ENV: &str = "RRGBENCH_IU_XRAY_FEATURES";

const ORACLE_TOL: f64 = 1e-9;
const ORACLE_BUDGET: Duration = Duration::from_secs(5);
const PROPERTY_CASES: u32 = 1000;
const PERMUTATION_TOL: f64 = 1e-12;
const CIDER_MAX: f64 = 10.0;
const EXAMPLE_BLEU1: (f64, f64) = (0.56, 0.06);
const EXAMPLE_ROUGE_L: (f64, f64) = (0.676, 0.05);
const TABLE_TOL: f64 = 0.05;
const NN_TOL: f64 = 0.08;
const IU_BUDGET: Duration = Duration::from_secs(120);
const AUC_BAND: (f64, f64) = (0.45, 0.55);
const NORMAL_IU: (f64, f64) = (0.76, 0.05);
const NORMAL_SYNTH_TOL: f64 = 0.02;

enum Outcome {
    Pass(String),
    Fail(String),
    Skipped(String),
}

type Check = Result<Outcome, String>;

type Criterion = (&'static str, &'static str, fn() -> Check);

fn pass(detail: impl Into<String>) -> Check {
    Ok(Outcome::Pass(detail.into()))
}

fn fail(detail: impl Into<String>) -> Check {
    Ok(Outcome::Fail(detail.into()))
}

fn verdict(ok: bool, detail: String) -> Check {
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn core_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core")
}

fn synthetic_dir() -> PathBuf {
    core_dir().join("data/synthetic")
}

fn toks(words: &str) -> Vec<String> {
    words.split_whitespace().map(str::to_string).collect()
}

fn within(v: f64, (target, tol): (f64, f64)) -> bool {
    (v - target).abs() <= tol + 1e-12
}

// ---------------------------------------------------------------- criterion 1

/// 24 pairs, each side at most 8 tokens.
const ORACLE_PAIRS: &[(&str, &str)] = &[
    ("the lungs are clear", "the lungs are clear"),
    ("the the the the", "the cat the mat"),
    ("no pleural effusion", "small left pleural effusion"),
    ("heart size is normal", "normal heart size"),
    ("a b a b a b", "a b a b"),
    ("x", "x y z"),
    ("x y z", "z y x"),
    (
        "no acute cardiopulmonary abnormality",
        "no acute abnormality",
    ),
    ("mild cardiomegaly", "the heart is mildly enlarged"),
    ("a a a a a a a a", "a a"),
    ("a b c d e f g h", "a b c d e f g h"),
    ("a b c d e f g h", "h g f e d c b a"),
    ("left lower lobe opacity", "opacity in the left lower lobe"),
    ("clear lungs clear lungs", "lungs clear lungs clear"),
    ("no pneumothorax or effusion", "no effusion or pneumothorax"),
    (
        "the cardiac silhouette is normal",
        "the cardiac silhouette is enlarged",
    ),
    ("p q r", "s t u"),
    ("a b a c a b", "a b a b a c"),
    ("one two three four five", "five four three two one"),
    ("xxxx xxxx xxxx", "xxxx"),
    ("stable sternotomy wires", "sternotomy wires are present"),
    ("no focal consolidation", "focal consolidation no"),
    ("b a b a b", "a b a b a b a b"),
    ("m n m n o", "n m n m o o"),
];

/// Clipped matches and candidate n-gram total by direct position scanning.
fn brute_clipped(cand: &[String], reference: &[String], n: usize) -> (usize, usize) {
    let grams = |t: &[String]| -> Vec<Vec<String>> {
        if t.len() < n {
            Vec::new()
        } else {
            (0..=t.len() - n).map(|i| t[i..i + n].to_vec()).collect()
        }
    };
    let c = grams(cand);
    let r = grams(reference);
    let mut distinct: Vec<&Vec<String>> = Vec::new();
    for g in &c {
        if !distinct.contains(&g) {
            distinct.push(g);
        }
    }
    let matches = distinct
        .iter()
        .map(|g| {
            let in_c = c.iter().filter(|x| x == g).count();
            let in_r = r.iter().filter(|x| x == g).count();
            in_c.min(in_r)
        })
        .sum();
    (matches, c.len())
}

fn is_subsequence(sub: &[&String], of: &[String]) -> bool {
    let mut it = of.iter();
    sub.iter().all(|s| it.any(|x| x == *s))
}

/// Longest common subsequence by trying every subsequence of `a`.
fn brute_lcs(a: &[String], b: &[String]) -> usize {
    let mut best = 0;
    for mask in 0u32..(1 << a.len()) {
        let sub: Vec<&String> = (0..a.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| &a[i])
            .collect();
        if sub.len() > best && is_subsequence(&sub, b) {
            best = sub.len();
        }
    }
    best
}

fn c1_metric_oracles() -> Check {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for (c, r) in ORACLE_PAIRS {
        let (c, r) = (toks(c), toks(r));
        assert!(c.len() <= 8 && r.len() <= 8);
        let score = bleu(std::slice::from_ref(&c), std::slice::from_ref(&r), 4)
            .map_err(|e| e.to_string())?;
        for n in 1..=4 {
            let (m, t) = brute_clipped(&c, &r, n);
            let expected = if t == 0 { 0.0 } else { m as f64 / t as f64 };
            let err = (score.precisions[n - 1] - expected).abs();
            worst = worst.max(err);
            if err > ORACLE_TOL || score.matches[n - 1] != m || score.totals[n - 1] != t {
                return fail(format!("BLEU p{n} mismatch on {c:?} / {r:?}"));
            }
        }
        let l = lcs_length(&c, &r);
        if l != brute_lcs(&c, &r) {
            return fail(format!("LCS mismatch on {c:?} / {r:?}"));
        }
    }
    let elapsed = start.elapsed();
    verdict(
        elapsed < ORACLE_BUDGET,
        format!(
            "{} pairs, max |Δp| {worst:.1e}, LCS exact, {elapsed:.2?}",
            ORACLE_PAIRS.len()
        ),
    )
}

// ---------------------------------------------------------------- criterion 2

const VOCAB: &[&str] = &[
    "the", "lungs", "are", "clear", "no", "effusion", "heart", "size", "is", "normal", "mild",
];

fn pairs() -> impl Strategy<Value = (Vec<Vec<String>>, Vec<Vec<String>>, usize)> {
    let sentence = prop::collection::vec(prop::sample::select(VOCAB), 1..12)
        .prop_map(|v| v.into_iter().map(str::to_string).collect::<Vec<String>>());
    (1usize..7).prop_flat_map(move |n| {
        (
            prop::collection::vec(sentence.clone(), n),
            prop::collection::vec(sentence.clone(), n),
            0..n,
        )
    })
}

fn c2_properties() -> Check {
    let mut runner = TestRunner::new(PropConfig {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..PropConfig::default()
    });
    let cider = CiderParams::default();
    let result = runner.run(&pairs(), |(c, r, rot)| {
        let b = bleu(&c, &r, 4).unwrap();
        let rl = rouge_l(&c, &r, DEFAULT_BETA).unwrap();
        let cd = cider_d(&c, &r, &cider).unwrap();
        for v in b.per_n.iter().chain([&b.mean_b, &rl.f]) {
            prop_assert!((0.0..=1.0).contains(v), "out of range {v}");
        }
        prop_assert!(
            cd.value >= 0.0 && cd.value <= CIDER_MAX + 1e-9,
            "CIDEr-D {}",
            cd.value
        );

        let bi = bleu(&r, &r, 4).unwrap();
        prop_assert!(bi
            .per_n
            .iter()
            .all(|&v| v == 0.0 || (v - 1.0).abs() < PERMUTATION_TOL));
        prop_assert!((bi.per_n[0] - 1.0).abs() < PERMUTATION_TOL);
        prop_assert!((rouge_l(&r, &r, DEFAULT_BETA).unwrap().f - 1.0).abs() < PERMUTATION_TOL);
        let ci = cider_d(&r, &r, &cider).unwrap();
        prop_assert!(ci.value <= CIDER_MAX + 1e-9);

        let (mut c2, mut r2) = (c.clone(), r.clone());
        c2.rotate_left(rot);
        r2.rotate_left(rot);
        let b2 = bleu(&c2, &r2, 4).unwrap();
        for n in 0..4 {
            prop_assert!((b.per_n[n] - b2.per_n[n]).abs() <= PERMUTATION_TOL);
        }
        prop_assert!((rl.f - rouge_l(&c2, &r2, DEFAULT_BETA).unwrap().f).abs() <= PERMUTATION_TOL);
        prop_assert!(
            (cd.value - cider_d(&c2, &r2, &cider).unwrap().value).abs() <= PERMUTATION_TOL
        );
        Ok(())
    });
    match result {
        Ok(()) => pass(format!(
            "{PROPERTY_CASES} generated cases: ranges, identity, permutation ≤ 1e-12, CIDEr-D ≤ 10"
        )),
        Err(e) => fail(e.to_string()),
    }
}

// ---------------------------------------------------------------- criterion 3

const EXAMPLE_ORIGINAL: &str =
    "The cardiac silhouette is enlarged. The lungs are hyperexpanded with flattening of \
the bilateral hemidiaphragms. No pneumothorax or pleural effusion.";

fn example_scores(tokenizer: &TokenizerConfig) -> (f64, f64, f64) {
    let c = vec![text_to_scoring_tokens(DEFAULT_CONSTANT_REPORT, tokenizer)];
    let r = vec![text_to_scoring_tokens(EXAMPLE_ORIGINAL, tokenizer)];
    let b = bleu(&c, &r, 4).unwrap();
    let rl = rouge_l(&c, &r, DEFAULT_BETA).unwrap();
    (b.per_n[0], b.mean_b, rl.f)
}

fn c3_constant_example() -> Check {
    // Assumed: the 0.56 target is BLEU-1.
    let (b1, _, rl) = example_scores(&TokenizerConfig::default());
    let with_periods = TokenizerConfig {
        period_tokens: true,
        ..TokenizerConfig::default()
    };
    let (pb1, pb, prl) = example_scores(&with_periods);
    println!(
        "    info C3: sentence periods as tokens gives BLEU-1 {pb1:.4}, B {pb:.4}, ROUGE-L {prl:.4} \
         (B and ROUGE-L hit the 0.56 / 0.676 targets; BLEU-1 does not)"
    );
    verdict(
        within(b1, EXAMPLE_BLEU1) && within(rl, EXAMPLE_ROUGE_L),
        format!(
            "BLEU-1 {b1:.4} (want {}±{}), ROUGE-L {rl:.4} (want {}±{}), assuming BLEU-1, default tokenizer",
            EXAMPLE_BLEU1.0, EXAMPLE_BLEU1.1, EXAMPLE_ROUGE_L.0, EXAMPLE_ROUGE_L.1
        ),
    )
}

// ---------------------------------------------------------------- criterion 4

fn constant_auc(corpus: &Corpus, lexicon: &Lexicon) -> Result<(f64, usize), String> {
    let ev = Evaluator::new(
        corpus,
        lexicon,
        MetricConfig::default(),
        UncertainPolicy::default(),
    )
    .map_err(|e| e.to_string())?;
    let mixed = DISEASE_COUNT - ev.gold_warnings().len();
    let set = gen_constant(corpus, DEFAULT_CONSTANT_REPORT).map_err(|e| e.to_string())?;
    let row = ev.score("Constant", &set).map_err(|e| e.to_string())?;
    Ok((row.cell("AUC").unwrap_or(f64::NAN), mixed))
}

fn c4_constant_auc() -> Check {
    let lexicon = Lexicon::builtin();
    let mut details = Vec::new();
    for (name, path) in [
        (
            "ten-report fixture",
            core_dir().join("tests/fixtures/ten_reports.jsonl"),
        ),
        ("synthetic", synthetic_dir().join("corpus.jsonl")),
    ] {
        let corpus = load_corpus(&path, CorpusFormat::JsonLines, TokenizerConfig::default())
            .map_err(|e| e.to_string())?;
        let (auc, mixed) = constant_auc(&corpus, &lexicon)?;
        if mixed == 0 || auc != 0.5 {
            return fail(format!(
                "{name}: AUC {auc} over {mixed} mixed-class observations"
            ));
        }
        details.push(format!("{name} {auc:.3} ({mixed} mixed)"));
    }

    // any constant score over random gold matrices
    let mut runner = TestRunner::new(PropConfig {
        cases: 200,
        failure_persistence: None,
        ..PropConfig::default()
    });
    let gold = prop::collection::vec(prop::array::uniform14(0u8..2), 2..40);
    let result = runner.run(&(gold, 0.0f64..1.0), |(gold, score)| {
        let gold: Vec<BinaryLabels> = gold;
        let scores = vec![[score; DISEASE_COUNT]; gold.len()];
        if let Ok(report) = auc_macro(&scores, &gold) {
            prop_assert_eq!(report.macro_auc, 0.5);
        }
        Ok(())
    });
    if let Err(e) = result {
        return fail(e.to_string());
    }
    details.push("200 random gold matrices".into());
    pass(format!("exactly 0.5: {}", details.join(", ")))
}

// ---------------------------------------------------------------- criterion 5

fn c5_b_column() -> Check {
    let mut details = Vec::new();
    for (system, row) in [
        (
            "Liu et al.",
            published::STATE_OF_THE_ART
                .iter()
                .find(|r| r.system == "Liu et al."),
        ),
        ("Constant", published::weak_baseline("Constant")),
    ] {
        let row = row.ok_or(format!("no published row for {system}"))?;
        let per_n: Vec<f64> = row.cells[..4].iter().map(|c| c.unwrap()).collect();
        let b = per_n.iter().sum::<f64>() / 4.0;
        let published_b = row.cells[4].unwrap();
        let shown = format!("{b:.3}");
        if shown != format!("{published_b:.3}") {
            return fail(format!(
                "{system}: mean {shown} vs published {published_b:.3}"
            ));
        }
        details.push(format!("{system} {shown}"));
    }
    pass(details.join(", "))
}

// ---------------------------------------------------------------- criteria 6, 9 (dataset)

fn iu_paths() -> Option<(PathBuf, Option<PathBuf>)> {
    let corpus = std::env::var_os(IU_CORPUS_ENV).map(PathBuf::from)?;
    let features = std::env::var_os(IU_FEATURES_ENV).map(PathBuf::from);
    Some((corpus, features))
}

fn skipped() -> Check {
    Ok(Outcome::Skipped(format!(
        "set {IU_CORPUS_ENV} to an IU X-ray corpus file to run"
    )))
}

fn c6_table_reproduction() -> Check {
    let Some((corpus, features)) = iu_paths() else {
        return skipped();
    };
    let mut baselines = vec![
        BaselineSpec::Constant {
            name: None,
            text: None,
            text_file: None,
            from_corpus: None,
        },
        BaselineSpec::Random {
            name: None,
            seed: 42,
        },
        BaselineSpec::TopSentences {
            name: None,
            n: 100,
            seed: 42,
        },
    ];
    if let Some(f) = &features {
        baselines.push(BaselineSpec::NearestNeighbor {
            name: None,
            features: f.display().to_string(),
        });
    }
    let config = BenchmarkConfig {
        corpus: corpus.display().to_string(),
        format: None,
        seed_override: None,
        tokenizer: TokenizerConfig::default(),
        metrics: MetricConfig::default(),
        labeler: Default::default(),
        output: Default::default(),
        baselines,
    };
    let start = Instant::now();
    let table = run_benchmark(&config, Path::new(".")).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    // (row, gated columns, tolerance)
    let bleu_rl: &[usize] = &[0, 1, 2, 3, 4, 5];
    let mut gates = vec![
        ("Constant", bleu_rl, TABLE_TOL),
        ("Random", bleu_rl, TABLE_TOL),
        ("Top-sentences-100", bleu_rl, TABLE_TOL),
    ];
    if features.is_some() {
        gates.push(("Nearest-neighbor", bleu_rl, NN_TOL));
    }
    let mut misses = Vec::new();
    for (system, cols, tol) in &gates {
        let ours = table.row(system).ok_or(format!("missing row {system}"))?;
        let theirs =
            published::weak_baseline(system).ok_or(format!("no published row {system}"))?;
        for &i in cols.iter() {
            if let (Some(a), Some(b)) = (ours.cells[i], theirs.cells[i]) {
                if (a - b).abs() > tol + 1e-12 {
                    misses.push(format!("{system} col {i}: {a:.3} vs {b:.3}"));
                }
            }
        }
    }
    let test_reports = table_test_size(&config)?;
    let nn_note = if features.is_some() {
        ""
    } else {
        "; nearest-neighbor not gated (no features)"
    };
    verdict(
        misses.is_empty() && elapsed < IU_BUDGET,
        format!(
            "{test_reports} test reports in {elapsed:.1?}{nn_note}{}",
            if misses.is_empty() {
                String::new()
            } else {
                format!("; misses: {}", misses.join(", "))
            }
        ),
    )
}

fn table_test_size(config: &BenchmarkConfig) -> Result<usize, String> {
    let corpus = load_corpus(
        Path::new(&config.corpus),
        config.corpus_format(),
        config.tokenizer,
    )
    .map_err(|e| e.to_string())?;
    Ok(corpus.test().count())
}

fn c9_normal_fraction() -> Check {
    let lexicon = Lexicon::builtin();
    let construction = SyntheticConfig::default().normal_fraction;
    let corpus = load_corpus(
        &synthetic_dir().join("corpus.jsonl"),
        CorpusFormat::JsonLines,
        TokenizerConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    let synth = normal_sentence_fraction(&corpus, &lexicon).map_err(|e| e.to_string())?;
    let synth_ok = (synth - construction).abs() <= NORMAL_SYNTH_TOL;
    let synth_detail = format!("synthetic {synth:.4} vs construction {construction}");
    match iu_paths() {
        None => {
            if synth_ok {
                Ok(Outcome::Skipped(format!(
                    "{synth_detail} ok; IU X-ray part needs {IU_CORPUS_ENV}"
                )))
            } else {
                fail(synth_detail)
            }
        }
        Some((path, _)) => {
            let iu = load_corpus(
                &path,
                CorpusFormat::from_path(&path),
                TokenizerConfig::default(),
            )
            .map_err(|e| e.to_string())?;
            let f = normal_sentence_fraction(&iu, &lexicon).map_err(|e| e.to_string())?;
            verdict(
                synth_ok && within(f, NORMAL_IU),
                format!(
                    "{synth_detail}; IU X-ray {f:.4} (want {}±{})",
                    NORMAL_IU.0, NORMAL_IU.1
                ),
            )
        }
    }
}

// ---------------------------------------------------------------- criterion 7

fn synthetic_table() -> Result<ScoreTable, String> {
    let dir = synthetic_dir();
    let config = BenchmarkConfig::load(&dir.join("benchmark.toml")).map_err(|e| e.to_string())?;
    run_benchmark(&config, &dir).map_err(|e| e.to_string())
}

fn c7_qualitative() -> Check {
    let corpus = load_corpus(
        &synthetic_dir().join("corpus.jsonl"),
        CorpusFormat::JsonLines,
        TokenizerConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    let cfg = SyntheticConfig::default();
    if corpus.len() < 200 || cfg.normal_fraction < 0.70 {
        return fail(format!(
            "synthetic corpus too small or too abnormal: {} reports",
            corpus.len()
        ));
    }
    let table = synthetic_table()?;
    let cell = |system: &str, col: &str| {
        table
            .row(system)
            .and_then(|r| r.cell(col))
            .unwrap_or(f64::NAN)
    };
    let (cb, rb) = (cell("Constant", "B"), cell("Random", "B"));
    let (crl, rrl) = (cell("Constant", "R-L"), cell("Random", "R-L"));
    let (ca, ra) = (cell("Constant", "AUC"), cell("Random", "AUC"));
    let band = |v: f64| (AUC_BAND.0..=AUC_BAND.1).contains(&v);
    verdict(
        cb > rb && crl > rrl && band(ca) && band(ra),
        format!(
            "{} reports; B {cb:.3} > {rb:.3}, R-L {crl:.3} > {rrl:.3}, AUC {ca:.3} / {ra:.3} in [{}, {}]",
            corpus.len(),
            AUC_BAND.0,
            AUC_BAND.1
        ),
    )
}

// ---------------------------------------------------------------- criterion 8

fn c8_determinism() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = synthetic_dir().join("benchmark.toml");
    let mut outputs = Vec::new();
    for (i, format) in ["markdown", "markdown", "json", "json"].iter().enumerate() {
        let out = dir.path().join(format!("run{i}.{format}"));
        let status = Command::new(env!("CARGO_BIN_EXE_rrgbench"))
            .env_remove(SEED_ENV)
            .args(["benchmark", "--config"])
            .arg(&config)
            .args(["--format", format, "--out"])
            .arg(&out)
            .status()
            .map_err(|e| e.to_string())?;
        if !status.success() {
            return fail(format!("benchmark run {i} exited with {status}"));
        }
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    verdict(
        outputs[0] == outputs[1] && outputs[2] == outputs[3],
        format!(
            "markdown {} bytes, json {} bytes, byte-identical across runs",
            outputs[0].len(),
            outputs[2].len()
        ),
    )
}

// ----------------------------------------------------------------

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("C1", "metric oracle equivalence", c1_metric_oracles),
        ("C2", "identity and range properties", c2_properties),
        ("C3", "constant-report example", c3_constant_example),
        ("C4", "constant-AUC law", c4_constant_auc),
        ("C5", "B column convention", c5_b_column),
        ("C6", "table baseline reproduction", c6_table_reproduction),
        (
            "C7",
            "qualitative finding on synthetic corpus",
            c7_qualitative,
        ),
        ("C8", "determinism", c8_determinism),
        ("C9", "normal-sentence statistic", c9_normal_fraction),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let default_hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));

    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for (id, name, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| id.eq_ignore_ascii_case(f)) {
            continue;
        }
        let outcome = match panic::catch_unwind(AssertUnwindSafe(check)) {
            Ok(Ok(o)) => o,
            Ok(Err(e)) => Outcome::Fail(format!("error: {e}")),
            Err(p) => Outcome::Fail(format!(
                "panic: {}",
                p.downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default()
            )),
        };
        let (tag, detail) = match outcome {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => ("FAIL", d),
            Outcome::Skipped(d) => ("SKIPPED-DATASET", d),
        };
        *counts.entry(tag).or_default() += 1;
        println!("acceptance {id} {tag}: {name}: {detail}");
    }
    panic::set_hook(default_hook);

    let failed = counts.get("FAIL").copied().unwrap_or(0);
    println!(
        "acceptance summary: {} passed, {failed} failed, {} skipped",
        counts.get("PASS").copied().unwrap_or(0),
        counts.get("SKIPPED-DATASET").copied().unwrap_or(0)
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
