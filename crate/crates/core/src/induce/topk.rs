use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::Accuracy;

/// An item with its ranking key: accuracy descending, then length
/// ascending, then rendered text ascending.
#[derive(Debug, Clone)]
pub struct Ranked<T> {
    pub accuracy: Accuracy,
    pub length: usize,
    pub text: String,
    pub item: T,
}

/// `Less` means `a` ranks ahead of `b`.
pub fn rank_cmp(a: (Accuracy, usize, &str), b: (Accuracy, usize, &str)) -> Ordering {
    b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then_with(|| a.2.cmp(b.2))
}

impl<T> Ranked<T> {
    fn key(&self) -> (Accuracy, usize, &str) {
        (self.accuracy, self.length, &self.text)
    }
}

impl<T> PartialEq for Ranked<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T> Eq for Ranked<T> {}

impl<T> PartialOrd for Ranked<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Worse items compare greater, so a max-heap keeps the worst on top.
impl<T> Ord for Ranked<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        rank_cmp(self.key(), other.key())
    }
}

/// The `k` best items seen so far.
#[derive(Debug, Clone)]
pub struct TopK<T> {
    k: usize,
    heap: BinaryHeap<Ranked<T>>,
}

impl<T> TopK<T> {
    pub fn new(k: usize) -> Self {
        TopK {
            k,
            heap: BinaryHeap::new(),
        }
    }

    fn is_full(&self) -> bool {
        self.heap.len() >= self.k
    }

    /// Whether an item with accuracy at most `ub` and length at least
    /// `min_len` could still enter.
    pub fn could_admit(&self, ub: Accuracy, min_len: usize) -> bool {
        if !self.is_full() {
            return self.k > 0;
        }
        let worst = self.heap.peek().expect("full heap with k > 0");
        ub > worst.accuracy || (ub == worst.accuracy && min_len <= worst.length)
    }

    /// Offers an item; `text` and `item` are only built if it may enter.
    pub fn offer(&mut self, accuracy: Accuracy, length: usize, text: impl FnOnce() -> String, item: impl FnOnce() -> T) {
        if self.k == 0 {
            return;
        }
        if self.is_full() {
            let worst = self.heap.peek().expect("non-empty");
            match accuracy.cmp(&worst.accuracy).reverse().then(length.cmp(&worst.length)) {
                Ordering::Greater => return,
                Ordering::Equal => {
                    let text = text();
                    if text >= worst.text {
                        return;
                    }
                    self.replace_worst(Ranked {
                        accuracy,
                        length,
                        text,
                        item: item(),
                    });
                    return;
                }
                Ordering::Less => {}
            }
            self.replace_worst(Ranked {
                accuracy,
                length,
                text: text(),
                item: item(),
            });
        } else {
            self.heap.push(Ranked {
                accuracy,
                length,
                text: text(),
                item: item(),
            });
        }
    }

    fn replace_worst(&mut self, r: Ranked<T>) {
        self.heap.pop();
        self.heap.push(r);
    }

    pub fn merge(mut self, other: TopK<T>) -> TopK<T> {
        for r in other.heap {
            self.offer(r.accuracy, r.length, || r.text, || r.item);
        }
        self
    }

    /// Best first.
    pub fn into_sorted(self) -> Vec<Ranked<T>> {
        self.heap.into_sorted_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn keeps_the_k_best_regardless_of_order(
            items in proptest::collection::btree_set((0usize..5, 1usize..4, "[a-c]{1,3}"), 0..30),
            k in 0usize..8,
            seed in any::<u64>(),
        ) {
            let items: Vec<_> = items.into_iter().collect();
            let mut expected: Vec<_> = items.clone();
            expected.sort_by(|a, b| rank_cmp((Accuracy::new(a.0, 4.max(a.0)), a.1, &a.2), (Accuracy::new(b.0, 4.max(b.0)), b.1, &b.2)));
            expected.truncate(k);

            let mut shuffled = items.clone();
            let n = shuffled.len();
            if n > 1 {
                for i in 0..n {
                    let j = (seed as usize).wrapping_mul(31).wrapping_add(i * 17) % n;
                    shuffled.swap(i, j);
                }
            }
            let (left, right) = shuffled.split_at(n / 2);
            let mut a = TopK::new(k);
            let mut b = TopK::new(k);
            for (part, top) in [(left, &mut a), (right, &mut b)] {
                for it in part {
                    top.offer(Accuracy::new(it.0, 4.max(it.0)), it.1, || it.2.clone(), || it.clone());
                }
            }
            let got: Vec<_> = a.merge(b).into_sorted().into_iter().map(|r| r.item).collect();
            prop_assert_eq!(got, expected);
        }
    }
}
