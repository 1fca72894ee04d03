//! Binary words under the prefix order, antichain families of words, and the
//! encoding of finite preorders into such families.
//!
//! `v ≤_W w` holds when `w` is a prefix of `v`: longer words sit lower. Families
//! compare by `A ≤ B` iff every `a ∈ A` lies below some `b ∈ B`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite word over `{0, 1}`. `Ord` is the shortlex order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<bool>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Word(bits)
    }

    /// `value` written in binary with exactly `width` digits, most significant first.
    pub fn fixed_width(value: usize, width: usize) -> Self {
        Word((0..width).rev().map(|i| value >> i & 1 == 1).collect())
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, bit: bool) -> Word {
        let mut bits = self.0.clone();
        bits.push(bit);
        Word(bits)
    }

    pub fn parent(&self) -> Option<Word> {
        if self.0.is_empty() {
            None
        } else {
            Some(Word(self.0[..self.0.len() - 1].to_vec()))
        }
    }

    pub fn has_prefix(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// Every word of length at most `depth`, in shortlex order.
    pub fn all_up_to(depth: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut level = vec![Word::empty()];
        for _ in 0..depth {
            level = level
                .iter()
                .flat_map(|w| [w.child(false), w.child(true)])
                .collect();
            out.extend(level.iter().cloned());
        }
        out
    }
}

/// `v ≤_W w` iff `w` is a prefix of `v`.
pub fn word_leq(v: &Word, w: &Word) -> bool {
    v.has_prefix(w)
}

/// Shorter words first, then lexicographic with `0 < 1`.
pub fn shortlex_cmp(v: &Word, w: &Word) -> Ordering {
    v.0.len().cmp(&w.0.len()).then_with(|| v.0.cmp(&w.0))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        shortlex_cmp(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse(format!("invalid binary word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A finite set of words, no two of which are comparable under `≤_W`.
/// Iteration is in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AntichainFamily {
    words: BTreeSet<Word>,
}

impl AntichainFamily {
    pub fn new(words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        for v in &words {
            if let Some(w) = words.iter().find(|w| *w != v && word_leq(v, w)) {
                return Err(Error::invalid(format!("family is not an antichain: {v} lies below {w}")));
            }
        }
        Ok(AntichainFamily { words })
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> + '_ {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    /// Re-checks the antichain invariant.
    pub fn is_antichain(&self) -> bool {
        self.words
            .iter()
            .all(|v| self.words.iter().all(|w| w == v || !word_leq(v, w)))
    }
}

impl<'de> Deserialize<'de> for AntichainFamily {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            words: Vec<Word>,
        }
        let raw = Raw::deserialize(deserializer)?;
        AntichainFamily::new(raw.words).map_err(serde::de::Error::custom)
    }
}

/// `A ≤ B` iff every word of `A` lies below some word of `B`.
pub fn family_leq(a: &AntichainFamily, b: &AntichainFamily) -> bool {
    a.words().all(|x| b.words().any(|y| word_leq(x, y)))
}

/// A finite preorder with its reflexive-transitive closure precomputed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePreorder {
    elements: Vec<String>,
    leq: Vec<Vec<bool>>,
}

/// `{elements: ["a", ..], leq: [["a", "b"], ..]}`; each pair reads "first ≤ second".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreorderJson {
    pub elements: Vec<String>,
    pub leq: Vec<[String; 2]>,
}

impl FinitePreorder {
    /// Closes `relations` (pairs of indices, `x ≤ y`) reflexively and transitively.
    pub fn from_indices(elements: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut seen = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if seen.insert(e.as_str(), i).is_some() {
                return Err(Error::invalid(format!("duplicate element {e:?}")));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(x, y) in relations {
            if x >= n || y >= n {
                return Err(Error::invalid(format!("relation ({x},{y}) out of range")));
            }
            leq[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let row = leq[k].clone();
                    for (cell, via) in leq[i].iter_mut().zip(row) {
                        *cell |= via;
                    }
                }
            }
        }
        Ok(FinitePreorder { elements, leq })
    }

    pub fn from_json(json: &PreorderJson) -> Result<Self> {
        let index: HashMap<&str, usize> = json
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.as_str(), i))
            .collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::invalid(format!("unknown element {name:?} in relation")))
        };
        let relations = json
            .leq
            .iter()
            .map(|[a, b]| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_indices(json.elements.clone(), &relations)
    }

    /// The closed relation as JSON, pairs in index order, diagonal omitted.
    pub fn to_json(&self) -> PreorderJson {
        let n = self.len();
        PreorderJson {
            elements: self.elements.clone(),
            leq: (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && self.leq[i][j])
                .map(|(i, j)| [self.elements[i].clone(), self.elements[j].clone()])
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// The inclusion order on all subsets of `{1, .., k}`, named like `{1,3}`.
    pub fn power_set(k: usize) -> Self {
        let name = |mask: usize| {
            let items: Vec<String> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", items.join(","))
        };
        let elements: Vec<String> = (0..1usize << k).map(name).collect();
        let relations: Vec<(usize, usize)> = (0..1usize << k)
            .flat_map(|a| (0..1usize << k).map(move |b| (a, b)))
            .filter(|&(a, b)| a & b == a)
            .collect();
        Self::from_indices(elements, &relations).expect("power set names are distinct")
    }

    pub fn chain(n: usize) -> Self {
        let elements = (0..n).map(|i| format!("c{i}")).collect();
        let relations: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_indices(elements, &relations).expect("chain names are distinct")
    }

    pub fn antichain(n: usize) -> Self {
        let elements = (0..n).map(|i| format!("a{i}")).collect();
        Self::from_indices(elements, &[]).expect("antichain names are distinct")
    }
}

/// Width of the fixed-width binary labels used by [`encode_finite_preorder`]: the
/// fewest bits that distinguish `n` indices, and at least one.
pub fn encoding_width(n: usize) -> usize {
    let mut width = 1;
    while (1usize << width) < n {
        width += 1;
    }
    width
}

/// Maps each element to the binary labels of its down-set. Distinct labels of
/// equal length are prefix-incomparable, so every image is an antichain, and
/// `x ≤ y` iff the down-set of `x` is contained in that of `y`.
pub fn encode_finite_preorder(p: &FinitePreorder) -> Vec<AntichainFamily> {
    let n = p.len();
    let width = encoding_width(n);
    (0..n)
        .map(|x| {
            AntichainFamily::new((0..n).filter(|&y| p.leq(y, x)).map(|y| Word::fixed_width(y, width)))
                .expect("equal-length words form an antichain")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn fam(ws: &[&str]) -> AntichainFamily {
        AntichainFamily::new(ws.iter().map(|s| w(s))).unwrap()
    }

    #[test]
    fn prefix_order_examples() {
        assert!(word_leq(&w("011000"), &w("011")));
        assert!(!word_leq(&w("010111"), &w("011")));
        for s in ["", "0", "1101"] {
            assert!(word_leq(&w(s), &Word::empty()));
        }
        assert!(!word_leq(&Word::empty(), &w("0")));
    }

    #[test]
    fn shortlex_examples() {
        assert_eq!(shortlex_cmp(&Word::empty(), &w("0")), Ordering::Less);
        assert_eq!(shortlex_cmp(&w("1"), &w("00")), Ordering::Less);
        assert_eq!(shortlex_cmp(&w("01"), &w("10")), Ordering::Less);
        let all = Word::all_up_to(2);
        let names: Vec<String> = all.iter().map(Word::to_string).collect();
        assert_eq!(names, ["", "0", "1", "00", "01", "10", "11"]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }

    #[test]
    fn family_examples() {
        assert!(family_leq(&fam(&["011000"]), &fam(&["011"])));
        let a = fam(&["01", "10"]);
        assert!(family_leq(&a, &a));
        assert!(!family_leq(&fam(&["01"]), &fam(&["10"])));
        assert!(AntichainFamily::new([w("0"), w("01")]).is_err());
    }

    #[test]
    fn family_json() {
        let f: AntichainFamily = serde_json::from_str(r#"{"words":["011","0100"]}"#).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"words":["011","0100"]}"#);
        let root: AntichainFamily = serde_json::from_str(r#"{"words":[""]}"#).unwrap();
        assert!(root.contains(&Word::empty()));
        // "" lies above every word
        assert!(serde_json::from_str::<AntichainFamily>(r#"{"words":["011",""]}"#).is_err());
        assert!(serde_json::from_str::<AntichainFamily>(r#"{"words":["012"]}"#).is_err());
    }

    #[test]
    fn encoding_examples() {
        let chain = FinitePreorder::chain(2);
        let enc = encode_finite_preorder(&chain);
        assert_eq!(enc[0], fam(&["0"]));
        assert_eq!(enc[1], fam(&["0", "1"]));
        assert!(family_leq(&enc[0], &enc[1]));
        assert!(!family_leq(&enc[1], &enc[0]));

        let anti = encode_finite_preorder(&FinitePreorder::antichain(2));
        assert!(!family_leq(&anti[0], &anti[1]) && !family_leq(&anti[1], &anti[0]));

        let json = PreorderJson {
            elements: vec!["a".into(), "b".into()],
            leq: vec![["a".into(), "b".into()], ["b".into(), "a".into()]],
        };
        let eq = FinitePreorder::from_json(&json).unwrap();
        let enc = encode_finite_preorder(&eq);
        assert_eq!(enc[0], enc[1]);
    }

    #[test]
    fn preorder_json_errors() {
        let dup = PreorderJson {
            elements: vec!["a".into(), "a".into()],
            leq: vec![],
        };
        assert!(FinitePreorder::from_json(&dup).is_err());
        let unknown = PreorderJson {
            elements: vec!["a".into()],
            leq: vec![["a".into(), "z".into()]],
        };
        assert!(FinitePreorder::from_json(&unknown).is_err());
    }

    #[test]
    fn closure_is_transitive() {
        let p = FinitePreorder::chain(4);
        assert!(p.leq(0, 3));
        assert!(!p.leq(3, 0));
        let ps = FinitePreorder::power_set(3);
        assert_eq!(ps.len(), 8);
        let count = (0..8).flat_map(|a| (0..8).map(move |b| (a, b))).filter(|&(a, b)| a != b && ps.leq(a, b)).count();
        assert_eq!(count, 19);
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        prop::collection::vec(any::<bool>(), 0..6).prop_map(Word::from_bits)
    }

    fn arb_preorder() -> impl Strategy<Value = FinitePreorder> {
        (1usize..=6).prop_flat_map(|n| {
            prop::collection::vec((0..n, 0..n), 0..10).prop_map(move |rel| {
                FinitePreorder::from_indices((0..n).map(|i| format!("e{i}")).collect(), &rel).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn word_order_is_partial(a in arb_word(), b in arb_word(), c in arb_word()) {
            prop_assert!(word_leq(&a, &a));
            if word_leq(&a, &b) && word_leq(&b, &a) { prop_assert_eq!(&a, &b); }
            if word_leq(&a, &b) && word_leq(&b, &c) { prop_assert!(word_leq(&a, &c)); }
        }

        #[test]
        fn encoding_is_an_order_embedding(p in arb_preorder()) {
            let enc = encode_finite_preorder(&p);
            for x in 0..p.len() {
                prop_assert!(enc[x].is_antichain());
                for y in 0..p.len() {
                    prop_assert_eq!(p.leq(x, y), family_leq(&enc[x], &enc[y]));
                }
            }
        }

        #[test]
        fn family_order_is_a_preorder(
            a in prop::collection::btree_set(0usize..16, 0..5),
            b in prop::collection::btree_set(0usize..16, 0..5),
            c in prop::collection::btree_set(0usize..16, 0..5),
            la in 0usize..3,
        ) {
            // mixed-length families: prefixes of fixed-width labels
            let mk = |s: &std::collections::BTreeSet<usize>, cut: usize| {
                let ws: BTreeSet<Word> = s.iter().map(|&v| {
                    let full = Word::fixed_width(v, 4);
                    Word::from_bits(full.bits()[..4 - (v + cut) % 3].to_vec())
                }).collect();
                // keep only minimal-length-free antichain: drop words having a proper prefix in the set
                let kept: Vec<Word> = ws.iter().filter(|x| !ws.iter().any(|y| y != *x && word_leq(x, y))).cloned().collect();
                AntichainFamily::new(kept).unwrap()
            };
            let (fa, fb, fc) = (mk(&a, la), mk(&b, la + 1), mk(&c, la + 2));
            prop_assert!(family_leq(&fa, &fa));
            if family_leq(&fa, &fb) && family_leq(&fb, &fc) {
                prop_assert!(family_leq(&fa, &fc));
            }
        }
    }
}
