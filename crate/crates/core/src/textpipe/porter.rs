//! Porter suffix-stripping stemmer.
//!
//! Faithful port of the reference implementation, including its two marked
//! departures from the 1980 paper (`bli` -> `ble` in step 2, the added
//! `logi` -> `log` rule) and the rule that words of one or two letters are
//! left untouched. Operates on lowercase ASCII; any other input is returned
//! unchanged.

/// Stem one lowercase word.
pub fn stem(word: &str) -> String {
    if word.len() <= 2 || !word.is_ascii() {
        return word.to_string();
    }
    let mut s = Stemmer {
        b: word.as_bytes().to_vec(),
        j: 0,
    };
    s.step1ab();
    s.step1c();
    s.step2();
    s.step3();
    s.step4();
    s.step5();
    String::from_utf8(s.b).expect("ascii in, ascii out")
}

struct Stemmer {
    b: Vec<u8>,
    // stem length left of the suffix matched by the latest `ends` call
    j: usize,
}

impl Stemmer {
    fn len(&self) -> usize {
        self.b.len()
    }

    fn cons(&self, i: usize) -> bool {
        match self.b[i] {
            b'a' | b'e' | b'i' | b'o' | b'u' => false,
            b'y' => i == 0 || !self.cons(i - 1),
            _ => true,
        }
    }

    /// Number of consonant-vowel sequences in `b[..len]` — the algorithm's
    /// measure `m` in the pattern `[C](VC)^m[V]`.
    fn measure(&self, len: usize) -> usize {
        let mut n = 0;
        let mut i = 0;
        while i < len && self.cons(i) {
            i += 1;
        }
        loop {
            while i < len && !self.cons(i) {
                i += 1;
            }
            if i == len {
                return n;
            }
            n += 1;
            while i < len && self.cons(i) {
                i += 1;
            }
            if i == len {
                return n;
            }
        }
    }

    fn has_vowel(&self, len: usize) -> bool {
        (0..len).any(|i| !self.cons(i))
    }

    /// `b[..len]` ends with a double consonant.
    fn double_cons(&self, len: usize) -> bool {
        len >= 2 && self.b[len - 1] == self.b[len - 2] && self.cons(len - 1)
    }

    /// `b[..len]` ends consonant-vowel-consonant where the final consonant
    /// is not w, x or y — the condition for restoring a final `e`.
    fn cvc(&self, len: usize) -> bool {
        if len < 3 || !self.cons(len - 1) || self.cons(len - 2) || !self.cons(len - 3) {
            return false;
        }
        !matches!(self.b[len - 1], b'w' | b'x' | b'y')
    }

    fn ends(&mut self, suffix: &[u8]) -> bool {
        if suffix.len() > self.len() || !self.b.ends_with(suffix) {
            return false;
        }
        self.j = self.len() - suffix.len();
        true
    }

    fn set_to(&mut self, s: &[u8]) {
        self.b.truncate(self.j);
        self.b.extend_from_slice(s);
    }

    /// Replace the matched suffix when the stem has positive measure.
    fn replace(&mut self, s: &[u8]) {
        if self.measure(self.j) > 0 {
            self.set_to(s);
        }
    }

    // Plurals and -ed / -ing.
    fn step1ab(&mut self) {
        if self.b.last() == Some(&b's') {
            if self.ends(b"sses") {
                self.set_to(b"ss");
            } else if self.ends(b"ies") {
                self.set_to(b"i");
            } else if self.len() >= 2 && self.b[self.len() - 2] != b's' {
                self.b.pop();
            }
        }
        if self.ends(b"eed") {
            if self.measure(self.j) > 0 {
                self.b.pop();
            }
        } else if (self.ends(b"ed") || self.ends(b"ing")) && self.has_vowel(self.j) {
            let j = self.j;
            self.b.truncate(j);
            if self.ends(b"at") {
                self.set_to(b"ate");
            } else if self.ends(b"bl") {
                self.set_to(b"ble");
            } else if self.ends(b"iz") {
                self.set_to(b"ize");
            } else if self.double_cons(self.len()) {
                if !matches!(self.b[self.len() - 1], b'l' | b's' | b'z') {
                    self.b.pop();
                }
            } else if self.measure(self.len()) == 1 && self.cvc(self.len()) {
                self.b.push(b'e');
            }
        }
    }

    // Terminal y -> i when the stem contains a vowel.
    fn step1c(&mut self) {
        if self.ends(b"y") && self.has_vowel(self.j) {
            let last = self.len() - 1;
            self.b[last] = b'i';
        }
    }

    // Double suffixes -> single ones, e.g. -ization = -ize + -ation -> -ize.
    fn step2(&mut self) {
        const RULES: &[(&[u8], &[u8])] = &[
            (b"ational", b"ate"),
            (b"tional", b"tion"),
            (b"enci", b"ence"),
            (b"anci", b"ance"),
            (b"izer", b"ize"),
            (b"bli", b"ble"),
            (b"alli", b"al"),
            (b"entli", b"ent"),
            (b"eli", b"e"),
            (b"ousli", b"ous"),
            (b"ization", b"ize"),
            (b"ation", b"ate"),
            (b"ator", b"ate"),
            (b"alism", b"al"),
            (b"iveness", b"ive"),
            (b"fulness", b"ful"),
            (b"ousness", b"ous"),
            (b"aliti", b"al"),
            (b"iviti", b"ive"),
            (b"biliti", b"ble"),
            (b"logi", b"log"),
        ];
        for &(suffix, to) in RULES {
            if self.ends(suffix) {
                self.replace(to);
                return;
            }
        }
    }

    // -ic-, -full, -ness and friends.
    fn step3(&mut self) {
        const RULES: &[(&[u8], &[u8])] = &[
            (b"icate", b"ic"),
            (b"ative", b""),
            (b"alize", b"al"),
            (b"iciti", b"ic"),
            (b"ical", b"ic"),
            (b"ful", b""),
            (b"ness", b""),
        ];
        for &(suffix, to) in RULES {
            if self.ends(suffix) {
                self.replace(to);
                return;
            }
        }
    }

    // Drop -ant, -ence etc. when the stem measure exceeds 1.
    fn step4(&mut self) {
        const SUFFIXES: &[&[u8]] = &[
            b"al", b"ance", b"ence", b"er", b"ic", b"able", b"ible", b"ant", b"ement", b"ment",
            b"ent", b"ion", b"ou", b"ism", b"ate", b"iti", b"ous", b"ive", b"ize",
        ];
        for &suffix in SUFFIXES {
            if self.ends(suffix) {
                // -ion only counts after a stem ending in s or t
                if suffix == b"ion" && !(self.j >= 1 && matches!(self.b[self.j - 1], b's' | b't')) {
                    return;
                }
                if self.measure(self.j) > 1 {
                    let j = self.j;
                    self.b.truncate(j);
                }
                return;
            }
        }
    }

    // Final -e removal and -ll reduction.
    fn step5(&mut self) {
        let len = self.len();
        if len >= 1 && self.b[len - 1] == b'e' {
            let m = self.measure(len - 1);
            if m > 1 || (m == 1 && !self.cvc(len - 1)) {
                self.b.pop();
            }
        }
        let len = self.len();
        if len >= 1 && self.b[len - 1] == b'l' && self.double_cons(len) && self.measure(len) > 1 {
            self.b.pop();
        }
    }
}
