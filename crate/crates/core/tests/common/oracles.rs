//! Slow reference implementations.

use astdiff_judge::ast::{load_ast, Ast};
use rand::Rng;

/// Largest subset of `pairs` strictly increasing in both coordinates, by
/// trying every subset.
pub fn llcs_exhaustive(pairs: &[(usize, usize)]) -> usize {
    let n = pairs.len();
    assert!(n <= 16);
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let mut chosen: Vec<(usize, usize)> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| pairs[i]).collect();
        chosen.sort();
        if chosen.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1) {
            best = best.max(chosen.len());
        }
    }
    best
}

/// Random injective pair list: distinct first and distinct second coordinates.
pub fn random_pairs(rng: &mut impl Rng, max_len: usize) -> Vec<(usize, usize)> {
    let n = rng.gen_range(0..=max_len);
    let mut xs: Vec<usize> = (0..max_len * 2).collect();
    let mut ys = xs.clone();
    use rand::seq::SliceRandom;
    xs.shuffle(rng);
    ys.shuffle(rng);
    xs.into_iter().zip(ys).take(n).collect()
}

fn common_subsequences<T: PartialEq>(
    a: &[T],
    b: &[T],
    from: (usize, usize),
    current: &mut Vec<(usize, usize)>,
    best: &mut Vec<(usize, usize)>,
) {
    if current.len() > best.len() || (current.len() == best.len() && *current < *best) {
        *best = current.clone();
    }
    for x in from.0..a.len() {
        for y in from.1..b.len() {
            if a[x] == b[y] {
                current.push((x, y));
                common_subsequences(a, b, (x + 1, y + 1), current, best);
                current.pop();
            }
        }
    }
}

/// Two-phase token pairing by enumeration: among all in-order matchings of
/// equal tokens, the longest and then lexicographically smallest; then every
/// unmapped token whose left neighbours on both sides are mapped to each
/// other (or are the list start) is mapped, until nothing changes.
pub fn pair_tokens_reference<T: PartialEq>(a: &[T], b: &[T]) -> Vec<(usize, usize)> {
    let mut best = Vec::new();
    common_subsequences(a, b, (0, 0), &mut Vec::new(), &mut best);
    let mut s2d: Vec<Option<usize>> = vec![None; a.len()];
    let mut d2s: Vec<Option<usize>> = vec![None; b.len()];
    for &(x, y) in &best {
        s2d[x] = Some(y);
        d2s[y] = Some(x);
    }
    loop {
        let mut changed = false;
        for x in 0..a.len() {
            if s2d[x].is_some() {
                continue;
            }
            let y = if x == 0 {
                0
            } else {
                match s2d[x - 1] {
                    Some(p) => p + 1,
                    None => continue,
                }
            };
            if y < b.len() && d2s[y].is_none() && (y == 0 || d2s[y - 1] == x.checked_sub(1)) {
                s2d[x] = Some(y);
                d2s[y] = Some(x);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    s2d.iter().enumerate().filter_map(|(x, y)| y.map(|y| (x, y))).collect()
}

/// A one-node tree whose value is the given words.
pub fn value_node(words: &[&str]) -> Ast {
    let source = words.join(" ");
    let doc = serde_json::json!({
        "header": {"format_version": 1, "statement_labels": [], "block_label": "Block"},
        "nodes": [{"id": 0, "label": "QualifiedName", "value": source, "start": 0, "end": source.len()}],
        "source": source,
    });
    load_ast(doc.to_string().as_bytes()).unwrap()
}

pub fn random_words<'a>(rng: &mut impl Rng, alphabet: &[&'a str], max_len: usize) -> Vec<&'a str> {
    let n = rng.gen_range(1..=max_len);
    (0..n).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}
