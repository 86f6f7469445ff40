//! Closed-form counts, count series by three independent methods, the
//! reference tables of avoider counts, and equivalence reports.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::avoidance::{counts_by_length, ClassSpec};
use crate::error::{Error, Result};
use crate::gentree::{level_counts, ALT_EVEN_1234, ALT_EVEN_2143, ALT_ODD_2143};
use crate::perm::{AlternationConvention, Permutation};
use crate::scalar::{factorial, Count};

/// `2 (3n)! / (n! (n+1)! (n+2)!)`, the size of `A_{2n}(2143)`.
pub fn count_even_formula<C: Count>(n: usize) -> C {
    let num = C::from_usize_exact(2) * factorial::<C>(3 * n);
    num / (factorial::<C>(n) * factorial::<C>(n + 1) * factorial::<C>(n + 2))
}

/// `2 (3n+3)! / (n! (n+1)! (n+2)! (2n+1)(2n+2)(2n+3))`, the size of
/// `A_{2n+1}(2143)`.
pub fn count_odd_formula<C: Count>(n: usize) -> C {
    let num = C::from_usize_exact(2) * factorial::<C>(3 * n + 3);
    let den = factorial::<C>(n)
        * factorial::<C>(n + 1)
        * factorial::<C>(n + 2)
        * C::from_usize_exact((2 * n + 1) * (2 * n + 2) * (2 * n + 3));
    num / den
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Brute,
    TreeDp,
    Formula,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Brute => "brute",
            Method::TreeDp => "tree",
            Method::Formula => "formula",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "tree" => Ok(Method::TreeDp),
            "formula" => Ok(Method::Formula),
            _ => Err(Error::Usage(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub n: usize,
    #[serde(with = "crate::scalar::decimal")]
    pub count: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSeries {
    pub class: ClassSpec,
    pub pattern: Permutation,
    pub method: Method,
    pub points: Vec<SeriesPoint>,
}

impl CountSeries {
    pub fn counts(&self) -> Vec<BigUint> {
        self.points.iter().map(|p| p.count.clone()).collect()
    }
}

/// How a length maps onto one of the known generating trees.
enum TreeCase {
    Even1234(usize),
    Even2143(usize),
    Odd2143(usize),
}

fn tree_case(pattern: &Permutation, spec: ClassSpec, n: usize) -> Option<TreeCase> {
    use AlternationConvention::*;
    let ClassSpec::Alternating(conv) = spec else {
        return None;
    };
    match (pattern.values(), conv, n % 2) {
        ([1, 2, 3, 4], UpDown, 0) if n >= 2 => Some(TreeCase::Even1234(n / 2)),
        ([2, 1, 4, 3], UpDown, 0) if n >= 2 => Some(TreeCase::Even2143(n / 2)),
        // reverse-complement fixes 2143 and swaps the two odd conventions
        ([2, 1, 4, 3], _, 1) => Some(TreeCase::Odd2143((n - 1) / 2)),
        _ => None,
    }
}

/// Counts of `pattern`-avoiders in the class at each requested length.
pub fn series(pattern: &Permutation, spec: ClassSpec, ns: &[usize], method: Method) -> Result<CountSeries> {
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Usage("lengths must be strictly increasing".into()));
    }
    let max_n = ns.last().copied().unwrap_or(0);
    let counts: Vec<BigUint> = match method {
        Method::Brute => {
            let all = counts_by_length(max_n, pattern, spec)?;
            ns.iter().map(|&n| all[n].into()).collect()
        }
        Method::TreeDp | Method::Formula => {
            let cases = ns
                .iter()
                .map(|&n| {
                    if n == 0 {
                        return Ok(None);
                    }
                    tree_case(pattern, spec, n).map(Some).ok_or_else(|| {
                        Error::Usage(format!(
                            "method {method} does not cover pattern {pattern} in class {spec} at length {n}"
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let depth = max_n / 2 + 1;
            let (even_1234, even_2143, odd_2143) = if method == Method::TreeDp {
                (
                    level_counts::<BigUint>(&ALT_EVEN_1234, depth),
                    level_counts::<BigUint>(&ALT_EVEN_2143, depth),
                    level_counts::<BigUint>(&ALT_ODD_2143, depth),
                )
            } else {
                Default::default()
            };
            cases
                .into_iter()
                .map(|case| match (case, method) {
                    (None, _) => BigUint::from(1u32),
                    (Some(TreeCase::Even1234(h)), Method::TreeDp) => even_1234[h - 1].clone(),
                    (Some(TreeCase::Even2143(h)), Method::TreeDp) => even_2143[h - 1].clone(),
                    (Some(TreeCase::Odd2143(h)), Method::TreeDp) => odd_2143[h].clone(),
                    (Some(TreeCase::Even1234(h) | TreeCase::Even2143(h)), _) => count_even_formula(h),
                    (Some(TreeCase::Odd2143(h)), _) => count_odd_formula(h),
                })
                .collect()
        }
    };
    Ok(CountSeries {
        class: spec,
        pattern: pattern.clone(),
        method,
        points: ns
            .iter()
            .zip(counts)
            .map(|(&n, count)| SeriesPoint { n, count })
            .collect(),
    })
}

/// Avoiders of `pattern` of length `n` whose descent set is exactly
/// `{k, 2k, ...}`.
pub fn descent_class_count(n: usize, k: usize, pattern: &Permutation) -> Result<BigUint> {
    if k == 0 || n == 0 {
        return Err(Error::Usage("descent_class_count needs n >= 1 and k >= 1".into()));
    }
    Ok(counts_by_length(n, pattern, ClassSpec::DescentSet(k))?[n].into())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedRow {
    pub patterns: Vec<Permutation>,
    pub counts: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedTable {
    pub id: u8,
    pub title: String,
    pub class: ClassSpec,
    pub columns: Vec<usize>,
    pub rows: Vec<ExpectedRow>,
}

impl ExpectedTable {
    pub fn cell_count(&self) -> usize {
        self.rows.len() * self.columns.len()
    }

    /// Row groupings, each sorted, as a partition of the listed patterns.
    pub fn groupings(&self) -> Vec<Vec<Permutation>> {
        let mut groups: Vec<Vec<Permutation>> = self
            .rows
            .iter()
            .map(|r| {
                let mut g = r.patterns.clone();
                g.sort();
                g
            })
            .collect();
        groups.sort();
        groups
    }
}

const UP: ClassSpec = ClassSpec::Alternating(AlternationConvention::UpDown);

type RawRow = (&'static [&'static str], [u64; 6]);

const TABLE_1: &[RawRow] = &[
    (&["1234", "4321", "2134", "4312", "3214", "4123"], [1, 2, 16, 168, 2112, 30030]),
    (&["2143", "3412", "1243", "3421", "1432", "2341"], [1, 2, 12, 110, 1274, 17136]),
    (&["2314", "4132", "2413", "3142", "1423", "3241"], [1, 2, 12, 106, 1138, 13734]),
    (&["1324", "4231"], [1, 2, 12, 110, 1285, 17653]),
    (&["1342", "2431"], [1, 2, 12, 108, 1202, 15234]),
    (&["3124", "4213"], [1, 2, 16, 168, 2072, 28298]),
];

const TABLE_2: &[RawRow] = &[
    (
        &["1234", "1243", "2134", "1432", "3214", "2143", "2341", "4123", "3421", "4312"],
        [1, 5, 42, 462, 6006, 87516],
    ),
    (&["3142", "3241", "4132"], [1, 5, 42, 444, 5337, 69657]),
    (&["1423", "2314", "2413"], [1, 4, 28, 260, 2844, 34564]),
    (&["3412"], [1, 4, 29, 290, 3532, 49100]),
    (&["1324"], [1, 4, 29, 292, 3620, 51866]),
    (&["1342", "3124"], [1, 5, 42, 453, 5651, 77498]),
    (&["2431", "4213"], [1, 5, 42, 454, 5680, 78129]),
    (&["4231"], [1, 5, 42, 462, 6070, 90686]),
    (&["4321"], [1, 5, 61, 744, 10329, 157586]),
];

const TABLE_3: &[RawRow] = &[
    (&["12534", "43521", "21534", "43512"], [1, 2, 16, 243, 5291, 144430]),
    (&["12453", "35421", "21453", "35412"], [1, 2, 16, 243, 5307, 146013]),
    (
        &[
            "12354", "45321", "12543", "34521", "15432", "23451", "21354", "45312", "21543", "34512",
            "32154", "45123",
        ],
        [1, 2, 16, 243, 5330, 148575],
    ),
    (&["12435", "53421", "21435", "53412"], [1, 2, 16, 243, 5330, 148764]),
    (
        &["12345", "54321", "21345", "54312", "32145", "54123", "43215", "51234"],
        [1, 2, 16, 272, 6531, 194062],
    ),
];

const TABLE_4: &[RawRow] = &[
    (&["12534", "23145", "21534", "23154"], [1, 5, 56, 997, 23653, 679810]),
    (&["34512", "45123", "45312"], [1, 5, 56, 1004, 24310, 724379]),
    (&["12435", "13245", "13254", "21435"], [1, 5, 56, 1004, 24336, 727807]),
    (&["12453", "31245", "21453", "31254"], [1, 5, 61, 1194, 30802, 953088]),
    (
        &[
            "12345", "21354", "12354", "21345", "12543", "32145", "15432", "43215", "21543", "32154",
            "23451", "51234", "34521", "54123", "45321", "54312",
        ],
        [1, 5, 61, 1194, 30945, 970717],
    ),
];

type RawDesRow = (&'static [&'static str], [u64; 4]);

const TABLE_5: &[RawDesRow] = &[
    (&["2413", "1423", "2314"], [1, 9, 153, 3465]),
    (&["1243", "2134", "2341", "4123"], [1, 9, 153, 3579]),
    (&["3142", "3241", "4132"], [1, 19, 642, 27453]),
    (&["2143", "4231", "1432", "3214", "3421", "4312"], [1, 19, 642, 29777]),
    (&["12354", "21345", "23451", "51234"], [1, 19, 887, 66816]),
    (&["15243", "32415", "35241", "52413"], [1, 19, 1077, 102051]),
    // 32145 is the reverse-complement partner of 12543
    (&["12543", "32145", "34521", "54123"], [1, 19, 1134, 114621]),
    (&["21354", "52341"], [1, 19, 1134, 115515]),
    (
        &[
            "15432", "43215", "21543", "32154", "25431", "53214", "31542", "42153", "32541", "52143",
            "35421", "54213", "41532", "43152", "42531", "53142", "43251", "51432", "43521", "54132",
            "45321", "54312", "52431", "53241", "53421", "54231",
        ],
        [1, 19, 1513, 211425],
    ),
];

fn build_rows(raw: impl Iterator<Item = (&'static [&'static str], Vec<u64>)>) -> Vec<ExpectedRow> {
    raw.map(|(pats, counts)| ExpectedRow {
        patterns: pats.iter().map(|s| s.parse().expect("table pattern")).collect(),
        counts,
    })
    .collect()
}

/// One of the five reference tables, by id `1..=5`.
pub fn expected_table(id: u8) -> Option<ExpectedTable> {
    let odd = vec![1, 3, 5, 7, 9, 11];
    let even = vec![2, 4, 6, 8, 10, 12];
    let six = |raw: &'static [RawRow]| build_rows(raw.iter().map(|(p, c)| (*p, c.to_vec())));
    let (title, class, columns, rows) = match id {
        1 => ("odd-length alternating, length-4 patterns", UP, odd, six(TABLE_1)),
        2 => ("even-length alternating, length-4 patterns", UP, even, six(TABLE_2)),
        3 => ("odd-length alternating, length-5 patterns", UP, odd, six(TABLE_3)),
        4 => ("even-length alternating, length-5 patterns", UP, even, six(TABLE_4)),
        5 => (
            "descent set {3,6,...}, length-4 and length-5 patterns",
            ClassSpec::DescentSet(3),
            vec![3, 6, 9, 12],
            build_rows(TABLE_5.iter().map(|(p, c)| (*p, c.to_vec()))),
        ),
        _ => return None,
    };
    Some(ExpectedTable { id, title: title.to_string(), class, columns, rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCheck {
    pub pattern: Permutation,
    pub computed: u64,
    pub ok: bool,
}

/// One table cell: a row's pattern group at one length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub row: usize,
    pub n: usize,
    pub expected: u64,
    pub checks: Vec<PatternCheck>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedCell {
    pub row: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub table: u8,
    pub cells: Vec<CellReport>,
    pub skipped: Vec<SkippedCell>,
    pub pass: bool,
}

/// Flat per-pattern record for machine-readable output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlatCell {
    pub row: usize,
    pub pattern: Permutation,
    pub n: usize,
    pub expected: u64,
    pub computed: u64,
    pub ok: bool,
}

impl TableReport {
    pub fn mismatches(&self) -> impl Iterator<Item = (&CellReport, &PatternCheck)> {
        self.cells
            .iter()
            .flat_map(|c| c.checks.iter().map(move |k| (c, k)))
            .filter(|(_, k)| !k.ok)
    }

    pub fn flat_cells(&self) -> Vec<FlatCell> {
        self.cells
            .iter()
            .flat_map(|c| {
                c.checks.iter().map(move |k| FlatCell {
                    row: c.row,
                    pattern: k.pattern.clone(),
                    n: c.n,
                    expected: c.expected,
                    computed: k.computed,
                    ok: k.ok,
                })
            })
            .collect()
    }
}

/// Recomputes every cell of `table` with lengths up to `max_n`; larger
/// columns are listed as skipped.
pub fn verify_expected(table: &ExpectedTable, max_n: Option<usize>) -> Result<TableReport> {
    let limit = max_n.unwrap_or(usize::MAX);
    let top = table.columns.iter().copied().filter(|&n| n <= limit).max().unwrap_or(0);
    let patterns: BTreeSet<&Permutation> = table.rows.iter().flat_map(|r| &r.patterns).collect();
    let computed: BTreeMap<&Permutation, Vec<u64>> = patterns
        .into_par_iter()
        .map(|p| counts_by_length(top, p, table.class).map(|c| (p, c)))
        .collect::<Result<_>>()?;

    let mut cells = Vec::new();
    let mut skipped = Vec::new();
    for (r, row) in table.rows.iter().enumerate() {
        for (&n, &expected) in table.columns.iter().zip(&row.counts) {
            if n > limit {
                skipped.push(SkippedCell { row: r + 1, n });
                continue;
            }
            let checks: Vec<PatternCheck> = row
                .patterns
                .iter()
                .map(|p| {
                    let got = computed[p][n];
                    PatternCheck { pattern: p.clone(), computed: got, ok: got == expected }
                })
                .collect();
            let ok = checks.iter().all(|k| k.ok);
            cells.push(CellReport { row: r + 1, n, expected, checks, ok });
        }
    }
    let pass = cells.iter().all(|c| c.ok);
    Ok(TableReport { table: table.id, cells, skipped, pass })
}

pub fn verify_table(id: u8, max_n: Option<usize>) -> Result<TableReport> {
    let table = expected_table(id).ok_or_else(|| Error::Usage(format!("no table {id}; tables are 1..=5")))?;
    verify_expected(&table, max_n)
}

/// The count-preserving symmetry expected for a class at given lengths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Symmetry {
    Reverse,
    ReverseComplement,
}

impl Symmetry {
    pub fn apply(self, p: &Permutation) -> Permutation {
        match self {
            Symmetry::Reverse => p.reverse(),
            Symmetry::ReverseComplement => p.reverse_complement(),
        }
    }

    /// Reverse-complement for even alternating lengths, descent classes at
    /// multiples of the period, and all permutations; reverse for odd
    /// alternating lengths.
    pub fn for_class(spec: ClassSpec, lengths: &[usize]) -> Option<Symmetry> {
        match spec {
            ClassSpec::All => Some(Symmetry::ReverseComplement),
            ClassSpec::Alternating(_) if lengths.iter().all(|n| n % 2 == 0) => {
                Some(Symmetry::ReverseComplement)
            }
            ClassSpec::Alternating(_) if lengths.iter().all(|n| n % 2 == 1) => Some(Symmetry::Reverse),
            ClassSpec::DescentSet(k) if lengths.iter().all(|n| n % k == 0) => {
                Some(Symmetry::ReverseComplement)
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceClass {
    pub patterns: Vec<Permutation>,
    pub counts: Vec<u64>,
    /// Pairs `{p, sym(p)}` with `p < sym(p)`, both in this class.
    pub trivial_pairs: Vec<(Permutation, Permutation)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub pattern_len: usize,
    pub class: ClassSpec,
    pub lengths: Vec<usize>,
    pub symmetry: Option<Symmetry>,
    /// Whether every pattern shares its class with its symmetric image.
    pub symmetry_consistent: Option<bool>,
    pub classes: Vec<EquivalenceClass>,
}

impl EquivalenceReport {
    pub fn partition(&self) -> Vec<Vec<Permutation>> {
        self.classes.iter().map(|c| c.patterns.clone()).collect()
    }

    pub fn class_of(&self, p: &Permutation) -> Option<&EquivalenceClass> {
        self.classes.iter().find(|c| c.patterns.contains(p))
    }

    /// Whether every class of `self` lies inside one class of `coarser`.
    pub fn refines(&self, coarser: &EquivalenceReport) -> bool {
        self.classes.iter().all(|c| {
            coarser
                .class_of(&c.patterns[0])
                .map_or(false, |big| c.patterns.iter().all(|p| big.patterns.contains(p)))
        })
    }
}

/// Groups all patterns of length `pattern_len` by their avoider counts at
/// the given lengths.
pub fn equivalence_report(pattern_len: usize, spec: ClassSpec, lengths: &[usize]) -> Result<EquivalenceReport> {
    if !(1..=6).contains(&pattern_len) {
        return Err(Error::Usage(format!("pattern length {pattern_len} is out of range")));
    }
    let max_n = lengths.iter().copied().max().unwrap_or(0);
    let patterns: Vec<Permutation> = Permutation::all(pattern_len).collect();
    let counted: Vec<(Permutation, Vec<u64>)> = patterns
        .into_par_iter()
        .map(|p| {
            let all = counts_by_length(max_n, &p, spec)?;
            Ok((p, lengths.iter().map(|&n| all[n]).collect()))
        })
        .collect::<Result<_>>()?;

    let mut groups: BTreeMap<Vec<u64>, Vec<Permutation>> = BTreeMap::new();
    for (p, counts) in counted {
        groups.entry(counts).or_default().push(p);
    }
    let symmetry = Symmetry::for_class(spec, lengths);
    let mut classes: Vec<EquivalenceClass> = groups
        .into_iter()
        .map(|(counts, mut patterns)| {
            patterns.sort();
            let trivial_pairs = symmetry
                .map(|s| {
                    patterns
                        .iter()
                        .filter_map(|p| {
                            let q = s.apply(p);
                            (p < &q && patterns.contains(&q)).then(|| (p.clone(), q))
                        })
                        .collect()
                })
                .unwrap_or_default();
            EquivalenceClass { patterns, counts, trivial_pairs }
        })
        .collect();
    classes.sort_by(|a, b| a.patterns[0].cmp(&b.patterns[0]));
    let symmetry_consistent = symmetry.map(|s| {
        classes
            .iter()
            .all(|c| c.patterns.iter().all(|p| c.patterns.contains(&s.apply(p))))
    });
    Ok(EquivalenceReport {
        pattern_len,
        class: spec,
        lengths: lengths.to_vec(),
        symmetry,
        symmetry_consistent,
        classes,
    })
}
