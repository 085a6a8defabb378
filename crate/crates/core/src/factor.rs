//! Dense tables over discrete variables.
//!
//! Tables are row-major in their scope order: the first variable varies
//! slowest and the last fastest.

#[derive(Clone, Debug, PartialEq)]
pub struct Factor<T> {
    pub scope: Vec<usize>,
    pub cards: Vec<usize>,
    pub data: Vec<T>,
}

impl<T: Clone> Factor<T> {
    pub fn new(scope: Vec<usize>, cards: Vec<usize>, data: Vec<T>) -> Self {
        debug_assert_eq!(scope.len(), cards.len());
        debug_assert_eq!(data.len(), cards.iter().product::<usize>());
        Factor { scope, cards, data }
    }

    pub fn constant(value: T) -> Self {
        Factor {
            scope: Vec::new(),
            cards: Vec::new(),
            data: vec![value],
        }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Entry at a full assignment indexed by variable id.
    pub fn at(&self, assignment: &[usize]) -> &T {
        let mut idx = 0;
        for (&var, &card) in self.scope.iter().zip(&self.cards) {
            idx = idx * card + assignment[var];
        }
        &self.data[idx]
    }
}

/// Row-major strides of `scope` (with cardinalities `cards`) expressed over
/// the positions of `frame`. Variables of `frame` outside `scope` get stride 0.
pub fn strides_in(scope: &[usize], cards: &[usize], frame: &[usize]) -> Vec<usize> {
    let mut own = vec![0; scope.len()];
    let mut acc = 1;
    for i in (0..scope.len()).rev() {
        own[i] = acc;
        acc *= cards[i];
    }
    frame
        .iter()
        .map(|v| {
            scope
                .iter()
                .position(|s| s == v)
                .map(|i| own[i])
                .unwrap_or(0)
        })
        .collect()
}

/// Odometer over the joint configurations of variables with the given
/// cardinalities, last position fastest.
#[derive(Clone, Debug)]
pub struct Configs {
    cards: Vec<usize>,
    current: Vec<usize>,
    done: bool,
}

impl Configs {
    pub fn new(cards: &[usize]) -> Self {
        Configs {
            cards: cards.to_vec(),
            current: vec![0; cards.len()],
            done: cards.iter().any(|&c| c == 0),
        }
    }
}

impl Iterator for Configs {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut i = self.cards.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.current[i] += 1;
            if self.current[i] < self.cards[i] {
                break;
            }
            self.current[i] = 0;
        }
        Some(out)
    }
}

/// Row-major index of `values` under `cards`.
pub fn flat_index(values: &[usize], cards: &[usize]) -> usize {
    values
        .iter()
        .zip(cards)
        .fold(0, |idx, (&v, &c)| idx * c + v)
}
