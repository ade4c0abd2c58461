//! Token-based type-2 clone detection.
//!
//! Works on the normalized token sequences the frontend attaches to method
//! bodies (identifiers and literals erased, structure kept). Candidate
//! windows are grouped by a rolling hash, verified by exact token comparison,
//! then grown to maximal length, so renamed copies are found and hash
//! collisions cannot produce false positives.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::model::{EntityId, NormToken};

/// One occurrence of a duplicated token sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CloneInstance {
    pub method: EntityId,
    pub start_line: u32,
    pub end_line: u32,
    pub token_offset: usize,
}

/// A set of identical normalized token subsequences of the same length.
///
/// Classes are maximal: at least one instance cannot be extended by one token
/// to the left, and at least one cannot be extended to the right, without
/// breaking the match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CloneClass {
    /// Number of normalized tokens each instance spans.
    pub length: usize,
    /// Sorted by (method, token offset); always at least two.
    pub instances: Vec<CloneInstance>,
    /// FNV-1a digest of the shared normalized sequence.
    pub normalized_sequence_hash: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Pos {
    method: usize,
    offset: usize,
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;
const ROLL_BASE: u64 = 1_000_003;

/// Finds all maximal type-2 clone classes of length at least `min_len` whose
/// instances span at least two methods or two non-overlapping positions.
pub fn detect_clones(methods: &[(EntityId, Vec<NormToken>)], min_len: usize) -> Vec<CloneClass> {
    let min_len = min_len.max(1);

    // Intern token keys so window comparison is integer comparison.
    let mut symbols: HashMap<(&str, &str), u32> = HashMap::new();
    let sequences: Vec<Vec<u32>> = methods
        .iter()
        .map(|(_, tokens)| {
            tokens
                .iter()
                .map(|t| {
                    let next = symbols.len() as u32;
                    *symbols.entry(t.key()).or_insert(next)
                })
                .collect()
        })
        .collect();

    // Rolling-hash buckets of every min_len window.
    let mut power = 1u64;
    for _ in 1..min_len {
        power = power.wrapping_mul(ROLL_BASE);
    }
    let mut buckets: HashMap<u64, Vec<Pos>> = HashMap::new();
    for (method, seq) in sequences.iter().enumerate() {
        if seq.len() < min_len {
            continue;
        }
        let mut hash = 0u64;
        for &sym in &seq[..min_len] {
            hash = hash.wrapping_mul(ROLL_BASE).wrapping_add(u64::from(sym) + 1);
        }
        buckets.entry(hash).or_default().push(Pos { method, offset: 0 });
        for offset in 1..=(seq.len() - min_len) {
            let outgoing = u64::from(seq[offset - 1]) + 1;
            let incoming = u64::from(seq[offset + min_len - 1]) + 1;
            hash = hash
                .wrapping_sub(outgoing.wrapping_mul(power))
                .wrapping_mul(ROLL_BASE)
                .wrapping_add(incoming);
            buckets.entry(hash).or_default().push(Pos { method, offset });
        }
    }

    let window = |pos: Pos, len: usize| &sequences[pos.method][pos.offset..pos.offset + len];

    // Exact-comparison grouping within each bucket kills hash collisions.
    let mut worklist: VecDeque<(Vec<Pos>, usize)> = VecDeque::new();
    let mut bucket_keys: Vec<u64> = buckets.keys().copied().collect();
    bucket_keys.sort_unstable();
    for key in bucket_keys {
        let mut positions = buckets.remove(&key).unwrap();
        if positions.len() < 2 {
            continue;
        }
        positions.sort_by(|&a, &b| window(a, min_len).cmp(window(b, min_len)).then(a.cmp(&b)));
        let mut start = 0;
        while start < positions.len() {
            let mut end = start + 1;
            while end < positions.len()
                && window(positions[end], min_len) == window(positions[start], min_len)
            {
                end += 1;
            }
            if end - start >= 2 {
                worklist.push_back((positions[start..end].to_vec(), min_len));
            }
            start = end;
        }
    }

    // Grow each group right as far as every occurrence stays identical; when
    // occurrences diverge the group is maximal and its divergent subgroups
    // continue on their own.
    let mut emitted: Vec<(Vec<Pos>, usize)> = Vec::new();
    while let Some((group, mut length)) = worklist.pop_front() {
        let mut group = group;
        loop {
            let mut partition: BTreeMap<Option<u32>, Vec<Pos>> = BTreeMap::new();
            for &pos in &group {
                let seq = &sequences[pos.method];
                let key = seq.get(pos.offset + length).copied();
                partition.entry(key).or_default().push(pos);
            }
            let unanimous = partition.len() == 1 && partition.keys().next().unwrap().is_some();
            if unanimous {
                length += 1;
                continue;
            }
            // Right-maximal here. Skip groups whose every instance extends
            // left identically; the shifted group subsumes them.
            let all_extend_left = group.iter().all(|p| p.offset > 0)
                && group
                    .iter()
                    .map(|p| sequences[p.method][p.offset - 1])
                    .collect::<Vec<_>>()
                    .windows(2)
                    .all(|w| w[0] == w[1]);
            if !all_extend_left {
                emitted.push((group.clone(), length));
            }
            for (key, part) in partition {
                if key.is_some() && part.len() >= 2 {
                    worklist.push_back((part, length + 1));
                }
            }
            break;
        }
    }

    let mut classes: Vec<CloneClass> = emitted
        .into_iter()
        .filter(|(group, length)| spans_enough(group, *length))
        .map(|(group, length)| {
            let mut instances: Vec<CloneInstance> = group
                .iter()
                .map(|pos| {
                    let tokens = &methods[pos.method].1;
                    CloneInstance {
                        method: methods[pos.method].0.clone(),
                        start_line: tokens[pos.offset].line,
                        end_line: tokens[pos.offset + length - 1].line,
                        token_offset: pos.offset,
                    }
                })
                .collect();
            instances.sort();
            let sample = group[0];
            let mut hash = FNV_OFFSET;
            for &sym in window(sample, length) {
                for byte in sym.to_le_bytes() {
                    hash ^= u64::from(byte);
                    hash = hash.wrapping_mul(FNV_PRIME);
                }
            }
            CloneClass { length, instances, normalized_sequence_hash: hash }
        })
        .collect();
    classes.sort_by(|a, b| a.instances.cmp(&b.instances).then(a.length.cmp(&b.length)));
    classes
}

/// Instances must lie in two distinct methods, or at two positions far enough
/// apart not to overlap.
fn spans_enough(group: &[Pos], length: usize) -> bool {
    let first_method = group[0].method;
    if group.iter().any(|p| p.method != first_method) {
        return true;
    }
    group.iter().any(|p| {
        group
            .iter()
            .any(|q| p.offset.abs_diff(q.offset) >= length)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tokens(spec: &str) -> Vec<NormToken> {
        spec.split_whitespace()
            .enumerate()
            .map(|(i, word)| NormToken {
                class: "KW".to_owned(),
                lexeme: word.to_owned(),
                line: i as u32 + 1,
            })
            .collect()
    }

    fn method(name: &str, spec: &str) -> (EntityId, Vec<NormToken>) {
        (EntityId::method("p.A", name, &[]), tokens(spec))
    }

    #[test]
    fn identical_methods_form_one_class() {
        let body = "a b c d e f g h i j";
        let methods = vec![method("m1", body), method("m2", body)];
        let classes = detect_clones(&methods, 10);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].length, 10);
        assert_eq!(classes[0].instances.len(), 2);
    }

    #[test]
    fn below_threshold_is_silent() {
        let body = "a b c d e f g h i";
        let methods = vec![method("m1", body), method("m2", body)];
        assert!(detect_clones(&methods, 10).is_empty());
    }

    #[test]
    fn shared_prefix_and_longer_pair_both_reported() {
        // m1/m2 share 6 tokens; m3 shares only the first 4.
        let methods = vec![
            method("m1", "a b c d e f"),
            method("m2", "a b c d e f"),
            method("m3", "a b c d x y"),
        ];
        let classes = detect_clones(&methods, 4);
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].length, 4);
        assert_eq!(classes[0].instances.len(), 3);
        assert_eq!(classes[1].length, 6);
        assert_eq!(classes[1].instances.len(), 2);
    }

    #[test]
    fn overlapping_same_method_repeat_requires_distance() {
        // "a a a a a" windows of 4 overlap; offsets 0 and 1 are 1 apart.
        let methods = vec![method("m1", "a a a a a")];
        assert!(detect_clones(&methods, 4).is_empty());
        // Two separated copies inside one method do count.
        let methods = vec![method("m2", "a b c d q q a b c d")];
        let classes = detect_clones(&methods, 4);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].instances.len(), 2);
        assert_eq!(classes[0].length, 4);
    }

    #[test]
    fn instances_never_extend_past_method_ends() {
        let methods = vec![method("m1", "z a b c d"), method("m2", "a b c d z")];
        let classes = detect_clones(&methods, 4);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].length, 4);
    }
}
