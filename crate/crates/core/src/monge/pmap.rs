//! Path-copying AVL map from `u64` keys to `i64` values with prefix sums.

use std::cmp::Ordering;
use std::sync::Arc;

pub type Link = Option<Arc<Node>>;

#[derive(Debug)]
pub struct Node {
    key: u64,
    value: i64,
    sum: i64,
    height: u8,
    left: Link,
    right: Link,
}

fn height(link: &Link) -> u8 {
    link.as_ref().map_or(0, |n| n.height)
}

fn sum(link: &Link) -> i64 {
    link.as_ref().map_or(0, |n| n.sum)
}

fn make(key: u64, value: i64, left: Link, right: Link) -> Arc<Node> {
    Arc::new(Node {
        key,
        value,
        sum: value + sum(&left) + sum(&right),
        height: 1 + height(&left).max(height(&right)),
        left,
        right,
    })
}

fn rotate_right(n: &Node, left: Arc<Node>, right: Link) -> Arc<Node> {
    let inner = make(n.key, n.value, left.right.clone(), right);
    make(left.key, left.value, left.left.clone(), Some(inner))
}

fn rotate_left(n: &Node, left: Link, right: Arc<Node>) -> Arc<Node> {
    let inner = make(n.key, n.value, left, right.left.clone());
    make(right.key, right.value, Some(inner), right.right.clone())
}

fn balance(n: &Node, left: Link, right: Link) -> Arc<Node> {
    let (hl, hr) = (height(&left), height(&right));
    if hl > hr + 1 {
        let l = left.expect("taller side exists");
        if height(&l.right) > height(&l.left) {
            let lr = l.right.clone().expect("taller inner side exists");
            let l = rotate_left(&l, l.left.clone(), lr);
            return rotate_right(n, l, right);
        }
        return rotate_right(n, l, right);
    }
    if hr > hl + 1 {
        let r = right.expect("taller side exists");
        if height(&r.left) > height(&r.right) {
            let rl = r.left.clone().expect("taller inner side exists");
            let r = rotate_right(&r, rl, r.right.clone());
            return rotate_left(n, left, r);
        }
        return rotate_left(n, left, r);
    }
    make(n.key, n.value, left, right)
}

/// New root with `delta` added to the value at `key` (inserted if absent).
pub fn add(root: &Link, key: u64, delta: i64) -> Arc<Node> {
    match root {
        None => make(key, delta, None, None),
        Some(n) => match key.cmp(&n.key) {
            Ordering::Equal => make(n.key, n.value + delta, n.left.clone(), n.right.clone()),
            Ordering::Less => balance(n, Some(add(&n.left, key, delta)), n.right.clone()),
            Ordering::Greater => balance(n, n.left.clone(), Some(add(&n.right, key, delta))),
        },
    }
}

/// Sum of values with key `≤ key`.
pub fn prefix_sum(root: &Link, key: u64) -> i64 {
    let mut acc = 0;
    let mut cur = root;
    while let Some(n) = cur {
        if n.key <= key {
            acc += sum(&n.left) + n.value;
            cur = &n.right;
        } else {
            cur = &n.left;
        }
    }
    acc
}
