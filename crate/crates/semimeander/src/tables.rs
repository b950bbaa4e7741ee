//! Enumeration of diagram families and computation of the constants
//! `C_{k,m}` (circular diagrams) and `D_{k,m}` (windows).
//!
//! `C_{k,m}` is the maximum of `t̂` over all length-`k` circular diagrams,
//! `D_{k,m}` over all length-`k` windows. Enumeration streams matchings,
//! deduplicates under reflection about the basepoint (which cannot change
//! the maximum), and reduces in parallel with an exact max.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::iter::{ParallelBridge, ParallelIterator};

use crate::acd::{Acd, PreAcd};
use crate::gauss::{serialize_acd, serialize_pre};
use crate::linear_form::LinearForm;
use crate::optimizer::{t_hat_of_functions, FunctionSet, MParam};
use crate::rational::{format_plain, parse_rational, to_f64, Rational};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Family {
    C,
    D,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s.trim() {
            "C" | "c" => Some(Family::C),
            "D" | "d" => Some(Family::D),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::C => write!(f, "C"),
            Family::D => write!(f, "D"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableEntry {
    pub value: Rational,
    /// Serialization of a maximizing diagram, when computed (fixture entries
    /// carry none).
    pub witness: Option<String>,
}

/// Computed or published constants, keyed by family, length and `m`.
#[derive(Clone, Default, Debug)]
pub struct CostTable {
    entries: BTreeMap<(Family, MParam, usize), TableEntry>,
}

impl CostTable {
    pub fn insert(&mut self, family: Family, m: MParam, k: usize, entry: TableEntry) {
        self.entries.insert((family, m, k), entry);
    }

    pub fn get(&self, family: Family, m: &MParam, k: usize) -> Option<&TableEntry> {
        self.entries.get(&(family, m.clone(), k))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Family, MParam, usize), &TableEntry)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Streaming enumeration of matchings on `0..n2` where every point is
/// matched to a distinct partner (`allow_singles = false`) or may also stay
/// single (`allow_singles = true`). Matchings are produced in lexicographic
/// order of the choice sequence.
struct MatchingStream {
    n2: usize,
    allow_singles: bool,
    partner: Vec<Option<usize>>,
    /// Applied choices: (position, its partner or `None` for single).
    trail: Vec<(usize, Option<usize>)>,
    state: StreamState,
}

enum StreamState {
    Fresh,
    Running,
    Done,
}

impl MatchingStream {
    fn new(n2: usize, allow_singles: bool) -> Self {
        Self {
            n2,
            allow_singles,
            partner: vec![None; n2],
            trail: Vec::new(),
            state: StreamState::Fresh,
        }
    }

    fn first_free(&self, from: usize) -> Option<usize> {
        (from..self.n2).find(|&p| self.partner[p].is_none() && !self.is_single(p))
    }

    fn is_single(&self, p: usize) -> bool {
        self.trail.iter().any(|&(q, pq)| q == p && pq.is_none())
    }

    fn apply(&mut self, p: usize, choice: Option<usize>) {
        if let Some(q) = choice {
            self.partner[p] = Some(q);
            self.partner[q] = Some(p);
        }
        self.trail.push((p, choice));
    }

    fn undo(&mut self) -> (usize, Option<usize>) {
        let (p, choice) = self.trail.pop().expect("undo on empty trail");
        if let Some(q) = choice {
            self.partner[p] = None;
            self.partner[q] = None;
        }
        (p, choice)
    }

    /// Extends the current prefix to a full matching, taking the first
    /// choice at every free position. Returns false if no extension exists.
    fn descend(&mut self) -> bool {
        while let Some(p) = self.first_free(0) {
            if self.allow_singles {
                self.apply(p, None);
            } else {
                match self.first_free(p + 1) {
                    Some(q) => self.apply(p, Some(q)),
                    None => return false,
                }
            }
        }
        true
    }

    /// Moves to the next full matching.
    fn advance(&mut self) -> bool {
        loop {
            let Some((p, choice)) = self.trail.pop() else {
                return false;
            };
            if let Some(q) = choice {
                self.partner[p] = None;
                self.partner[q] = None;
            }
            let next = match choice {
                None => self.first_free(p + 1),
                Some(q) => (q + 1..self.n2).find(|&r| self.partner[r].is_none() && !self.is_single(r)),
            };
            if let Some(q) = next {
                self.apply(p, Some(q));
                if self.descend() {
                    return true;
                }
                // dead end: unwind the partial descent back to this choice
                while self.trail.last() != Some(&(p, Some(q))) {
                    self.undo();
                }
            }
        }
    }
}

impl Iterator for MatchingStream {
    type Item = Vec<Option<usize>>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.state {
            StreamState::Fresh => {
                self.state = StreamState::Running;
                if !self.descend() {
                    self.state = StreamState::Done;
                    return None;
                }
            }
            StreamState::Running => {
                if !self.advance() {
                    self.state = StreamState::Done;
                    return None;
                }
            }
            StreamState::Done => return None,
        }
        Some(self.partner.clone())
    }
}

/// All perfect matchings on `2k` points, `(2k-1)!!` of them.
pub fn perfect_matchings(k: usize) -> impl Iterator<Item = Vec<usize>> {
    MatchingStream::new(2 * k, false)
        .map(|m| m.into_iter().map(|q| q.expect("perfect matching")).collect())
}

/// All partial matchings on `2k` points (involutions with fixed points).
pub fn partial_matchings(k: usize) -> impl Iterator<Item = Vec<Option<usize>>> {
    MatchingStream::new(2 * k, true)
}

fn reflect_perfect(m: &[usize]) -> Vec<usize> {
    let n2 = m.len();
    (0..n2).map(|p| n2 - 1 - m[n2 - 1 - p]).collect()
}

fn reflect_partial(m: &[Option<usize>]) -> Vec<Option<usize>> {
    let n2 = m.len();
    (0..n2).map(|p| m[n2 - 1 - p].map(|q| n2 - 1 - q)).collect()
}

/// Fresh circular diagrams of length `k`, one per reflection orbit.
pub fn enumerate_acds(k: usize) -> impl Iterator<Item = Acd> {
    perfect_matchings(k).filter_map(|m| {
        if m <= reflect_perfect(&m) {
            Some(Acd::fresh_from_partner(m))
        } else {
            None
        }
    })
}

/// Fresh windows of length `k`, one per reflection orbit.
pub fn enumerate_preacds(k: usize) -> impl Iterator<Item = PreAcd> {
    partial_matchings(k).filter_map(move |m| {
        if m <= reflect_partial(&m) {
            Some(PreAcd::fresh(k, &m))
        } else {
            None
        }
    })
}

/// Options for a table computation.
#[derive(Clone, Copy, Default)]
pub struct ComputeOptions {
    /// Report enumeration progress to stderr.
    pub progress: bool,
}

fn best_of_stream<M, I, F, W>(
    stream: I,
    m: &MParam,
    final_forms: F,
    witness_of: W,
    progress_every: Option<usize>,
) -> TableEntry
where
    M: Send,
    I: Iterator<Item = M> + Send,
    F: Fn(&M, Option<&Rational>) -> Option<Vec<LinearForm>> + Sync,
    W: Fn(&M) -> String + Sync,
{
    let best: Mutex<Option<(Rational, String)>> = Mutex::new(None);
    let count = AtomicUsize::new(0);
    stream.par_bridge().for_each(|item| {
        if let Some(every) = progress_every {
            let c = count.fetch_add(1, Ordering::Relaxed) + 1;
            if c % every == 0 {
                eprintln!("  ... {c} diagrams");
            }
        }
        // A diagram is skipped only when a valid upper bound on its value is
        // strictly below the running best, so neither the max nor the
        // lexicographic witness tie-break can be affected.
        let threshold = best.lock().unwrap().as_ref().map(|(b, _)| b.clone());
        let Some(forms) = final_forms(&item, threshold.as_ref()) else {
            return;
        };
        let fs = FunctionSet::from_forms(forms);
        if let Some(b) = &threshold {
            if fs.quick_upper_bound(m) < *b {
                return;
            }
        }
        let value = t_hat_of_functions(&fs, m);
        let witness = witness_of(&item);
        let mut guard = best.lock().unwrap();
        let replace = match guard.as_ref() {
            None => true,
            Some((b, w)) => value > *b || (value == *b && witness < *w),
        };
        if replace {
            *guard = Some((value, witness));
        }
    });
    let (value, witness) = best.into_inner().unwrap().expect("family is never empty");
    TableEntry { value, witness: Some(witness) }
}

/// `C_{k,m}` or `D_{k,m}` with a maximizing witness.
pub fn compute_entry(family: Family, k: usize, m: &MParam, opts: ComputeOptions) -> TableEntry {
    let progress_every = if opts.progress { Some(100_000) } else { None };
    match family {
        Family::C => best_of_stream(
            perfect_matchings(k).filter(|p| *p <= reflect_perfect(p)),
            m,
            |partner, threshold| crate::fast::acd_final_forms(partner, m, threshold),
            |partner| serialize_acd(&Acd::fresh_from_partner(partner.clone())),
            progress_every,
        ),
        Family::D => best_of_stream(
            partial_matchings(k).filter(|p| *p <= reflect_partial(p)),
            m,
            |pairing, threshold| crate::fast::pre_final_forms(pairing, m, threshold),
            |pairing| serialize_pre(&PreAcd::fresh(k, pairing)),
            progress_every,
        ),
    }
}

/// Computes one family row for `k = 0..=k_max`.
pub fn compute_table(k_max: usize, m: &MParam, family: Family, opts: ComputeOptions) -> CostTable {
    let mut out = CostTable::default();
    for k in 0..=k_max {
        if opts.progress {
            eprintln!("computing {family}_{{{k},{m}}} ...");
        }
        let entry = compute_entry(family, k, m, opts);
        if opts.progress {
            eprintln!("  {family}_{{{k},{m}}} = {}", format_plain(&entry.value));
        }
        out.insert(family, m.clone(), k, entry);
    }
    out
}

/// The published constants for `k = 0..=9`.
pub fn published_table() -> CostTable {
    const C8: [&str; 10] =
        ["1", "1 9/16", "3 1/4", "4 3/8", "6 2/5", "11 1/8", "14 1/2", "20 1/8", "34 3/4", "44 7/8"];
    const CINF: [&str; 10] = ["1", "1 1/2", "3", "4", "5 4/5", "10", "13", "18", "31", "40"];
    const D8: [&str; 10] =
        ["1", "2 1/8", "3 1/4", "4 15/16", "7 3/4", "11 1/8", "16 3/4", "24 5/8", "37", "53 7/8"];
    const DINF: [&str; 10] = ["1", "2", "3", "4 1/2", "7", "10", "15", "22", "33", "48"];

    let mut out = CostTable::default();
    let eight = MParam::Finite(crate::rational::rat(8));
    let rows: [(Family, MParam, &[&str; 10]); 4] = [
        (Family::C, eight.clone(), &C8),
        (Family::C, MParam::Infinite, &CINF),
        (Family::D, eight, &D8),
        (Family::D, MParam::Infinite, &DINF),
    ];
    for (family, m, values) in rows {
        for (k, text) in values.iter().enumerate() {
            let value = parse_rational(text).expect("fixture constant");
            out.insert(family, m.clone(), k, TableEntry { value, witness: None });
        }
    }
    out
}

/// CSV with columns `k,family,m,value,log10`; the value is an exact
/// rational, the logarithm a 12-digit decimal.
pub fn emit_growth_csv<W: Write>(table: &CostTable, mut out: W) -> std::io::Result<()> {
    writeln!(out, "k,family,m,value,log10")?;
    for ((family, m, k), entry) in table.iter() {
        let log10 = to_f64(&entry.value).log10();
        writeln!(out, "{k},{family},{m},{},{log10:.12}", format_plain(&entry.value))?;
    }
    Ok(())
}

/// Least-squares slope of `y` against `x`.
pub fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Human-readable table in the published layout (rows per family and `m`,
/// columns by `k`, mixed-number formatting).
pub fn render_table(table: &CostTable) -> String {
    use crate::rational::format_mixed;
    let mut ks: Vec<usize> = table.iter().map(|((_, _, k), _)| *k).collect();
    ks.sort_unstable();
    ks.dedup();
    let mut rows: Vec<(Family, MParam)> = table.iter().map(|((f, m, _), _)| (*f, m.clone())).collect();
    rows.sort();
    rows.dedup();

    let mut cells: Vec<Vec<String>> = Vec::new();
    let mut header = vec!["k".to_string()];
    header.extend(ks.iter().map(|k| k.to_string()));
    cells.push(header);
    for (family, m) in rows {
        let mut row = vec![format!("{family}_{{k,{m}}}")];
        for &k in &ks {
            row.push(match table.get(family, &m, k) {
                Some(e) => format_mixed(&e.value),
                None => "-".to_string(),
            });
        }
        cells.push(row);
    }

    let widths: Vec<usize> = (0..cells[0].len())
        .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in &cells {
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            out.push_str(&format!("{:>width$}", cell, width = widths[j]));
        }
        out.push('\n');
    }
    out
}

/// Compares computed entries against the published values; returns the list
/// of mismatches as `(key, computed, published)`.
pub fn diff_against_published(computed: &CostTable) -> Vec<(String, Rational, Rational)> {
    let published = published_table();
    let mut out = Vec::new();
    for ((family, m, k), entry) in computed.iter() {
        if let Some(reference) = published.get(*family, m, *k) {
            if reference.value != entry.value {
                out.push((
                    format!("{family}_{{{k},{m}}}"),
                    entry.value.clone(),
                    reference.value.clone(),
                ));
            }
        }
    }
    out
}
