//! Set partitions of `[n]` in canonical sequential form (restricted growth
//! strings), forbidden patterns, and subsequence-pattern containment.
//!
//! A partition `B_1, ..., B_d` of `[n]` with blocks listed by increasing
//! minima is stored as the word `w_1 ... w_n` where `i ∈ B_{w_i}`. A word is
//! canonical iff `w_1 = 1` and every letter is at most one more than the
//! maximum of the letters before it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("empty word")]
    EmptyWord,
    /// 1-based position of the first letter that breaks the restricted
    /// growth condition.
    #[error("not canonical at position {0}")]
    NotCanonical(usize),
    #[error("pattern not in reduced form at position {0}")]
    NotReduced(usize),
    #[error("not a partition of [n]: {0}")]
    NotAPartition(String),
    #[error("invalid (k,d) = ({k},{d}): need k >= 2 and 0 <= d <= k")]
    InvalidCrossing { k: usize, d: usize },
    #[error("cannot parse word {0:?}")]
    Parse(String),
}

/// Returns the 1-based index of the first letter violating the restricted
/// growth condition, or `None` when the word is canonical.
pub fn first_violation(word: &[u32]) -> Option<usize> {
    let mut max = 0u32;
    for (i, &letter) in word.iter().enumerate() {
        if letter == 0 || letter > max + 1 {
            return Some(i + 1);
        }
        max = max.max(letter);
    }
    None
}

pub fn is_canonical(word: &[u32]) -> bool {
    first_violation(word).is_none()
}

/// Renames letters by rank among the distinct letters present.
pub fn reduce(word: &[u32]) -> Result<Pattern, PartitionError> {
    if word.is_empty() {
        return Err(PartitionError::EmptyWord);
    }
    let mut letters: Vec<u32> = word.to_vec();
    letters.sort_unstable();
    letters.dedup();
    let reduced = word
        .iter()
        .map(|c| letters.binary_search(c).unwrap() as u32 + 1)
        .collect();
    Ok(Pattern { word: reduced })
}

/// Parses `"1231242"` (one digit per letter) or `"1,2,10,1"`.
pub fn parse_word(s: &str) -> Result<Vec<u32>, PartitionError> {
    let s = s.trim();
    let err = || PartitionError::Parse(s.to_string());
    if s.is_empty() {
        return Ok(Vec::new());
    }
    if s.contains(',') {
        s.split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| err()))
            .collect()
    } else {
        s.chars().map(|c| c.to_digit(10).ok_or_else(err)).collect()
    }
}

fn write_word(f: &mut fmt::Formatter<'_>, word: &[u32]) -> fmt::Result {
    let sep = if word.iter().all(|&c| c <= 9) {
        ""
    } else {
        ","
    };
    for (i, c) in word.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

/// A set partition of `[n]` held as its canonical word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SetPartition {
    word: Vec<u32>,
}

impl SetPartition {
    pub fn new(word: Vec<u32>) -> Result<Self, PartitionError> {
        match first_violation(&word) {
            Some(pos) => Err(PartitionError::NotCanonical(pos)),
            None => Ok(SetPartition { word }),
        }
    }

    /// The partition of the empty set.
    pub fn empty() -> Self {
        SetPartition::default()
    }

    /// Builds the canonical word from blocks given in any order. Elements are
    /// 1-based and the union must be exactly `{1, ..., n}`.
    pub fn from_blocks<B: AsRef<[u32]>>(blocks: &[B]) -> Result<Self, PartitionError> {
        let n: usize = blocks.iter().map(|b| b.as_ref().len()).sum();
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(PartitionError::NotAPartition(format!(
                    "block {} is empty",
                    b + 1
                )));
            }
            for &e in block {
                let slot = (e as usize)
                    .checked_sub(1)
                    .and_then(|i| owner.get_mut(i))
                    .ok_or_else(|| {
                        PartitionError::NotAPartition(format!("element {e} outside [1, {n}]"))
                    })?;
                if slot.is_some() {
                    return Err(PartitionError::NotAPartition(format!(
                        "element {e} repeated"
                    )));
                }
                *slot = Some(b);
            }
        }
        // every slot is filled: n elements, no repeats, all in range
        let mut label = vec![0u32; blocks.len()];
        let mut next = 0u32;
        let word = owner
            .into_iter()
            .map(|b| {
                let b = b.unwrap();
                if label[b] == 0 {
                    next += 1;
                    label[b] = next;
                }
                label[b]
            })
            .collect();
        Ok(SetPartition { word })
    }

    /// Blocks listed by increasing minima, each sorted ascending.
    pub fn to_blocks(&self) -> Vec<Vec<u32>> {
        let mut blocks: Vec<Vec<u32>> = vec![Vec::new(); self.block_count()];
        for (i, &c) in self.word.iter().enumerate() {
            blocks[c as usize - 1].push(i as u32 + 1);
        }
        blocks
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn block_count(&self) -> usize {
        self.word.iter().copied().max().unwrap_or(0) as usize
    }

    /// The `m` such that the partition is `m`-increasing: `w_i = i` for
    /// `i <= m` and either `m = n` or `w_{m+1} != m + 1`.
    pub fn initial_run_length(&self) -> usize {
        initial_run_length(&self.word)
    }

    pub fn contains(&self, pattern: &Pattern) -> bool {
        find_embedding(&self.word, pattern.word(), false).is_some()
    }

    /// 1-based positions of one occurrence of `pattern`, if any.
    pub fn witness(&self, pattern: &Pattern) -> Option<Vec<usize>> {
        find_embedding(&self.word, pattern.word(), false)
            .map(|pos| pos.into_iter().map(|p| p + 1).collect())
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.word)
    }
}

impl FromStr for SetPartition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SetPartition::new(parse_word(s)?)
    }
}

fn initial_run_length(word: &[u32]) -> usize {
    word.iter()
        .enumerate()
        .take_while(|&(i, &c)| c as usize == i + 1)
        .count()
}

/// A nonempty word in reduced form, used as a forbidden subsequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    word: Vec<u32>,
}

impl Pattern {
    /// Accepts only words that are already reduced, i.e. restricted growth
    /// strings.
    pub fn new(word: Vec<u32>) -> Result<Self, PartitionError> {
        if word.is_empty() {
            return Err(PartitionError::EmptyWord);
        }
        match first_violation(&word) {
            Some(pos) => Err(PartitionError::NotReduced(pos)),
            None => Ok(Pattern { word }),
        }
    }

    /// `1 2 ... k 1 2 ... d`.
    pub fn crossing(k: usize, d: usize) -> Result<Self, PartitionError> {
        if k < 2 || d > k {
            return Err(PartitionError::InvalidCrossing { k, d });
        }
        let word = (1..=k as u32).chain(1..=d as u32).collect();
        Ok(Pattern { word })
    }

    pub fn word(&self) -> &[u32] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn alphabet_size(&self) -> usize {
        self.word.iter().copied().max().unwrap_or(0) as usize
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_word(f, &self.word)
    }
}

impl FromStr for Pattern {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Pattern::new(parse_word(s)?)
    }
}

/// Backtracking search for positions `i_1 < ... < i_m` in `word` whose values
/// have the same reduced form as `pattern`. With `anchor_last`, the final
/// pattern letter must land on the last position of `word`, which is the
/// query needed when a prefix that avoids the pattern is extended by one
/// letter. Returns 0-based positions.
pub(crate) fn find_embedding(
    word: &[u32],
    pattern: &[u32],
    anchor_last: bool,
) -> Option<Vec<usize>> {
    let m = pattern.len();
    if m == 0 {
        return Some(Vec::new());
    }
    if m > word.len() {
        return None;
    }
    let letters = pattern.iter().copied().max().unwrap() as usize;
    let mut matcher = Matcher {
        word,
        pattern,
        anchor_last,
        bound: vec![None; letters + 1],
        positions: Vec::with_capacity(m),
    };
    if matcher.search(0, 0) {
        Some(matcher.positions)
    } else {
        None
    }
}

struct Matcher<'a> {
    word: &'a [u32],
    pattern: &'a [u32],
    anchor_last: bool,
    /// Value currently bound to each pattern letter (index 0 unused).
    bound: Vec<Option<u32>>,
    positions: Vec<usize>,
}

impl Matcher<'_> {
    fn search(&mut self, j: usize, start: usize) -> bool {
        let m = self.pattern.len();
        if j == m {
            return true;
        }
        let n = self.word.len();
        // leave room for the remaining m - j - 1 pattern letters
        let last = n - (m - j);
        let range = if self.anchor_last && j == m - 1 {
            if start > n - 1 {
                return false;
            }
            n - 1..=n - 1
        } else {
            start..=last
        };
        let letter = self.pattern[j] as usize;
        for pos in range {
            let value = self.word[pos];
            let fresh = match self.bound[letter] {
                Some(v) if v == value => false,
                Some(_) => continue,
                None => {
                    if !self.consistent(letter, value) {
                        continue;
                    }
                    self.bound[letter] = Some(value);
                    true
                }
            };
            self.positions.push(pos);
            if self.search(j + 1, pos + 1) {
                return true;
            }
            self.positions.pop();
            if fresh {
                self.bound[letter] = None;
            }
        }
        false
    }

    /// A new binding must be injective and order-preserving against the
    /// letters already bound.
    fn consistent(&self, letter: usize, value: u32) -> bool {
        self.bound
            .iter()
            .enumerate()
            .skip(1)
            .all(|(other, b)| match b {
                None => true,
                Some(v) => (other < letter && *v < value) || (other > letter && *v > value),
            })
    }
}

/// Every canonical word of length `n`, in lexicographic order.
pub fn enumerate_partitions(n: usize) -> Partitions {
    Partitions {
        word: vec![1; n],
        prefix_max: vec![1; n],
        started: false,
        done: false,
    }
}

/// Iterator over restricted growth strings of a fixed length.
#[derive(Debug, Clone)]
pub struct Partitions {
    word: Vec<u32>,
    /// `prefix_max[i] = max(word[..=i])`
    prefix_max: Vec<u32>,
    started: bool,
    done: bool,
}

impl Iterator for Partitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(SetPartition {
                word: self.word.clone(),
            });
        }
        let n = self.word.len();
        let Some(i) = (1..n)
            .rev()
            .find(|&i| self.word[i] <= self.prefix_max[i - 1])
        else {
            self.done = true;
            return None;
        };
        self.word[i] += 1;
        self.prefix_max[i] = self.prefix_max[i - 1].max(self.word[i]);
        for t in i + 1..n {
            self.word[t] = 1;
            self.prefix_max[t] = self.prefix_max[i];
        }
        Some(SetPartition {
            word: self.word.clone(),
        })
    }
}

pub fn count_avoiding(n: usize, pattern: &Pattern) -> BigInt {
    count_by_run_with(n, Some(pattern)).into_values().sum()
}

/// Counts of `pattern`-avoiding partitions of `[n]` keyed by initial run
/// length. Only nonzero entries are present.
pub fn count_avoiding_by_run(n: usize, pattern: &Pattern) -> BTreeMap<usize, BigInt> {
    count_by_run_with(n, Some(pattern))
}

/// Counts of all partitions of `[n]` keyed by initial run length.
pub fn count_by_run(n: usize) -> BTreeMap<usize, BigInt> {
    count_by_run_with(n, None)
}

/// Depth of the prefixes handed out as independent parallel jobs.
const SPLIT_DEPTH: usize = 6;

fn count_by_run_with(n: usize, pattern: Option<&Pattern>) -> BTreeMap<usize, BigInt> {
    let pattern = pattern.map(Pattern::word);
    let depth = n.min(SPLIT_DEPTH);
    let mut prefixes = Vec::new();
    collect_prefixes(&mut Vec::with_capacity(n), 0, depth, pattern, &mut prefixes);

    let partials: Vec<Vec<u64>> = prefixes
        .into_par_iter()
        .map(|prefix| {
            let mut counts = vec![0u64; n + 1];
            let max = prefix.iter().copied().max().unwrap_or(0);
            let mut word = prefix;
            word.reserve(n - word.len());
            extend(&mut word, max, n, pattern, &mut counts);
            counts
        })
        .collect();

    let mut totals = vec![0u64; n + 1];
    for partial in partials {
        for (t, c) in totals.iter_mut().zip(partial) {
            *t += c;
        }
    }
    totals
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(run, c)| (run, BigInt::from(c)))
        .collect()
}

fn avoids_after_push(word: &[u32], pattern: Option<&[u32]>) -> bool {
    match pattern {
        None => true,
        Some(p) => find_embedding(word, p, true).is_none(),
    }
}

fn collect_prefixes(
    word: &mut Vec<u32>,
    max: u32,
    depth: usize,
    pattern: Option<&[u32]>,
    out: &mut Vec<Vec<u32>>,
) {
    if word.len() == depth {
        out.push(word.clone());
        return;
    }
    for letter in 1..=max + 1 {
        word.push(letter);
        if avoids_after_push(word, pattern) {
            collect_prefixes(word, max.max(letter), depth, pattern, out);
        }
        word.pop();
    }
}

/// Depth-first extension of an avoiding prefix. A prefix that contains the
/// pattern is never extended, since containment survives appending letters.
fn extend(word: &mut Vec<u32>, max: u32, n: usize, pattern: Option<&[u32]>, counts: &mut [u64]) {
    if word.len() == n {
        counts[initial_run_length(word)] += 1;
        return;
    }
    for letter in 1..=max + 1 {
        word.push(letter);
        if avoids_after_push(word, pattern) {
            extend(word, max.max(letter), n, pattern, counts);
        }
        word.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Vec<u32> {
        parse_word(s).unwrap()
    }

    fn p(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn sp(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce(&w("135351")).unwrap().word(), &w("123231")[..]);
        assert_eq!(reduce(&w("111")).unwrap().word(), &w("111")[..]);
        assert_eq!(reduce(&w("424")).unwrap().word(), &w("212")[..]);
        assert_eq!(reduce(&[]), Err(PartitionError::EmptyWord));
    }

    #[test]
    fn canonical_examples() {
        assert!(is_canonical(&w("1231242")));
        assert!(!is_canonical(&w("21")));
        assert!(!is_canonical(&w("113")));
        assert!(is_canonical(&[]));
        assert_eq!(first_violation(&w("21")), Some(1));
        assert_eq!(first_violation(&w("113")), Some(3));
    }

    #[test]
    fn from_blocks_examples() {
        let blocks: Vec<Vec<u32>> = vec![vec![1, 4], vec![2, 5, 7], vec![3], vec![6]];
        assert_eq!(SetPartition::from_blocks(&blocks).unwrap(), sp("1231242"));
        assert_eq!(SetPartition::from_blocks(&[vec![1]]).unwrap(), sp("1"));
        assert_eq!(
            SetPartition::from_blocks(&[vec![2, 3], vec![1]]).unwrap(),
            sp("122")
        );
    }

    #[test]
    fn from_blocks_rejects_non_partitions() {
        for bad in [
            vec![vec![1, 2], vec![2]],
            vec![vec![1], vec![3]],
            vec![vec![1], vec![]],
            vec![vec![0]],
        ] {
            assert!(matches!(
                SetPartition::from_blocks(&bad),
                Err(PartitionError::NotAPartition(_))
            ));
        }
    }

    #[test]
    fn to_blocks_examples() {
        assert_eq!(
            sp("1231242").to_blocks(),
            vec![vec![1, 4], vec![2, 5, 7], vec![3], vec![6]]
        );
        assert_eq!(sp("1").to_blocks(), vec![vec![1]]);
        assert_eq!(sp("122").to_blocks(), vec![vec![1], vec![2, 3]]);
        assert!(SetPartition::empty().to_blocks().is_empty());
    }

    #[test]
    fn contains_examples() {
        assert!(!sp("1231242").contains(&p("12321")));
        assert!(sp("1231242").contains(&p("1212")));
        assert_eq!(sp("1231242").witness(&p("1212")), Some(vec![1, 2, 4, 5]));
        assert!(!sp("1").contains(&p("11")));
        assert!(!SetPartition::empty().contains(&p("1")));
    }

    #[test]
    fn pattern_validation() {
        assert_eq!(Pattern::new(vec![]), Err(PartitionError::EmptyWord));
        assert_eq!(Pattern::new(w("212")), Err(PartitionError::NotReduced(1)));
        assert_eq!(p("12312").alphabet_size(), 3);
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(Pattern::crossing(2, 2).unwrap(), p("1212"));
        assert_eq!(Pattern::crossing(3, 0).unwrap(), p("123"));
        assert_eq!(Pattern::crossing(3, 2).unwrap(), p("12312"));
        assert!(Pattern::crossing(1, 0).is_err());
        assert!(Pattern::crossing(3, 4).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let words: Vec<String> = enumerate_partitions(3).map(|p| p.to_string()).collect();
        assert_eq!(words, ["111", "112", "121", "122", "123"]);
        let empty: Vec<_> = enumerate_partitions(0).collect();
        assert_eq!(empty, vec![SetPartition::empty()]);
        assert_eq!(enumerate_partitions(4).count(), 15);
    }

    #[test]
    fn run_length_examples() {
        assert_eq!(sp("1231242").initial_run_length(), 3);
        assert_eq!(sp("123").initial_run_length(), 3);
        assert_eq!(sp("11").initial_run_length(), 1);
        assert_eq!(SetPartition::empty().initial_run_length(), 0);
    }

    #[test]
    fn count_examples() {
        assert_eq!(count_avoiding(5, &p("1212")), BigInt::from(42));
        assert_eq!(count_avoiding(0, &p("1")), BigInt::from(1));
        assert_eq!(count_avoiding(4, &p("1221")), BigInt::from(14));
    }

    #[test]
    fn count_by_run_examples() {
        let runs = count_avoiding_by_run(3, &p("1212"));
        let expected: BTreeMap<usize, BigInt> = [(1, 2), (2, 2), (3, 1)]
            .into_iter()
            .map(|(k, v)| (k, BigInt::from(v)))
            .collect();
        assert_eq!(runs, expected);
        assert_eq!(
            count_avoiding_by_run(0, &p("12")),
            [(0, BigInt::from(1))].into()
        );
        let total: BigInt = count_avoiding_by_run(5, &p("1212")).into_values().sum();
        assert_eq!(total, BigInt::from(42));
    }

    #[test]
    fn display_uses_commas_above_nine() {
        let big = Pattern::crossing(10, 1).unwrap();
        assert_eq!(big.to_string(), "1,2,3,4,5,6,7,8,9,10,1");
        assert_eq!(big.to_string().parse::<Pattern>().unwrap(), big);
        assert_eq!(sp("1231242").to_string(), "1231242");
    }
}
