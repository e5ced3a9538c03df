//! Snowball English (Porter2) stemmer, following the current `english.sbl`
//! rule set (including the revised R1 prefixes and the `-ed`/`-ing`
//! undoubling exceptions).
//!
//! Input is expected to be lowercase. Characters outside `a-z` are treated
//! as consonants, matching the reference implementation.

const R1_PREFIXES: &[&str] = &[
    "arsen", "commun", "emerg", "gener", "inter", "later", "organ", "past", "univers",
];

const EXCEPTIONS: &[(&str, &str)] = &[
    ("andes", "andes"),
    ("atlas", "atlas"),
    ("bias", "bias"),
    ("cosmos", "cosmos"),
    ("early", "earli"),
    ("gently", "gentl"),
    ("howe", "howe"),
    ("idly", "idl"),
    ("news", "news"),
    ("only", "onli"),
    ("singly", "singl"),
    ("skies", "sky"),
    ("skis", "ski"),
    ("sky", "sky"),
    ("ugly", "ugli"),
];

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

fn is_vowel_wxy(c: char) -> bool {
    is_vowel(c) || matches!(c, 'w' | 'x' | 'Y')
}

fn is_valid_li(c: char) -> bool {
    matches!(c, 'c' | 'd' | 'e' | 'g' | 'h' | 'k' | 'm' | 'n' | 'r' | 't')
}

/// Stems a single lowercase word.
pub fn stem(word: &str) -> String {
    if let Some((_, out)) = EXCEPTIONS.iter().find(|(w, _)| *w == word) {
        return (*out).to_string();
    }
    if word.chars().count() < 3 {
        return word.to_string();
    }
    let mut w = Word::new(word);
    w.prelude();
    w.mark_regions();
    w.step_1a();
    w.step_1b();
    w.step_1c();
    w.step_2();
    w.step_3();
    w.step_4();
    w.step_5();
    w.postlude()
}

struct Word {
    chars: Vec<char>,
    p1: usize,
    p2: usize,
    y_found: bool,
}

impl Word {
    fn new(word: &str) -> Self {
        Self {
            chars: word.chars().collect(),
            p1: 0,
            p2: 0,
            y_found: false,
        }
    }

    fn len(&self) -> usize {
        self.chars.len()
    }

    fn ends_with(&self, suffix: &str) -> bool {
        let n = suffix.chars().count();
        n <= self.len()
            && self.chars[self.len() - n..]
                .iter()
                .copied()
                .eq(suffix.chars())
    }

    /// Longest suffix from `table` that the word ends with.
    fn longest_suffix<'a, T: Copy>(&self, table: &'a [(&'a str, T)]) -> Option<(&'a str, T)> {
        table
            .iter()
            .filter(|(s, _)| self.ends_with(s))
            .max_by_key(|(s, _)| s.len())
            .copied()
    }

    fn replace_suffix(&mut self, suffix_len: usize, with: &str) {
        let start = self.len() - suffix_len;
        self.chars.truncate(start);
        self.chars.extend(with.chars());
    }

    fn prelude(&mut self) {
        if self.chars.first() == Some(&'\'') {
            self.chars.remove(0);
        }
        if self.chars.first() == Some(&'y') {
            self.chars[0] = 'Y';
            self.y_found = true;
        }
        for i in 1..self.len() {
            if self.chars[i] == 'y' && is_vowel(self.chars[i - 1]) {
                self.chars[i] = 'Y';
                self.y_found = true;
            }
        }
    }

    /// Position just past the first non-vowel that follows a vowel, scanning from `from`.
    fn region_after(&self, from: usize) -> Option<usize> {
        let c = &self.chars;
        let vowel = (from..c.len()).find(|&i| is_vowel(c[i]))?;
        let cons = (vowel + 1..c.len()).find(|&i| !is_vowel(c[i]))?;
        Some(cons + 1)
    }

    fn mark_regions(&mut self) {
        let n = self.len();
        self.p1 = n;
        self.p2 = n;
        let prefix = R1_PREFIXES.iter().find(|p| {
            let k = p.chars().count();
            k <= n && self.chars[..k].iter().copied().eq(p.chars())
        });
        let p1 = match prefix {
            Some(p) => Some(p.chars().count()),
            None => self.region_after(0),
        };
        if let Some(p1) = p1 {
            self.p1 = p1;
            if let Some(p2) = self.region_after(p1) {
                self.p2 = p2;
            }
        }
    }

    fn in_r1(&self, suffix_len: usize) -> bool {
        self.len() - suffix_len >= self.p1
    }

    fn in_r2(&self, suffix_len: usize) -> bool {
        self.len() - suffix_len >= self.p2
    }

    /// Whether the word up to `end` ends in a short syllable.
    fn short_syllable_at(&self, end: usize) -> bool {
        let c = &self.chars;
        if end >= 3 && !is_vowel_wxy(c[end - 1]) && is_vowel(c[end - 2]) && !is_vowel(c[end - 3]) {
            return true;
        }
        if end == 2 && !is_vowel(c[1]) && is_vowel(c[0]) {
            return true;
        }
        end >= 4 && c[end - 4..end].iter().copied().eq("past".chars())
    }

    fn has_vowel_before(&self, end: usize) -> bool {
        self.chars[..end].iter().any(|&c| is_vowel(c))
    }

    fn step_1a(&mut self) {
        if let Some((s, _)) = self.longest_suffix(&[("'", ()), ("'s'", ()), ("'s", ())]) {
            self.replace_suffix(s.chars().count(), "");
        }
        const TABLE: &[(&str, u8)] = &[
            ("ied", 2),
            ("s", 3),
            ("ies", 2),
            ("sses", 1),
            ("ss", 0),
            ("us", 0),
        ];
        match self.longest_suffix(TABLE) {
            Some((_, 1)) => self.replace_suffix(4, "ss"),
            Some((_, 2)) => {
                if self.len() - 3 >= 2 {
                    self.replace_suffix(3, "i");
                } else {
                    self.replace_suffix(3, "ie");
                }
            }
            Some((_, 3)) => {
                let n = self.len();
                if n >= 2 && self.has_vowel_before(n - 2) {
                    self.replace_suffix(1, "");
                }
            }
            _ => {}
        }
    }

    fn step_1b(&mut self) {
        const TABLE: &[(&str, u8)] = &[
            ("ed", 2),
            ("eed", 1),
            ("ing", 3),
            ("edly", 2),
            ("eedly", 1),
            ("ingly", 2),
        ];
        let Some((suffix, kind)) = self.longest_suffix(TABLE) else {
            return;
        };
        let slen = suffix.chars().count();
        let stem_end = self.len() - slen;
        match kind {
            1 => {
                if self.in_r1(slen) {
                    let stem: String = self.chars[..stem_end].iter().collect();
                    if !matches!(stem.as_str(), "succ" | "proc" | "exc") {
                        self.replace_suffix(slen, "ee");
                    }
                }
                return;
            }
            3 => {
                let stem: String = self.chars[..stem_end].iter().collect();
                if stem_end == 2 && self.chars[1] == 'y' && !is_vowel(self.chars[0]) {
                    // "dying" -> "die"
                    self.chars.truncate(1);
                    self.chars.extend("ie".chars());
                    return;
                }
                if matches!(
                    stem.as_str(),
                    "even" | "cann" | "inn" | "earr" | "herr" | "out"
                ) {
                    return;
                }
            }
            _ => {}
        }
        if !self.has_vowel_before(stem_end) {
            return;
        }
        self.chars.truncate(stem_end);
        if self.ends_with("at") || self.ends_with("bl") || self.ends_with("iz") {
            self.chars.push('e');
            return;
        }
        let n = self.len();
        let doubled = n >= 2
            && self.chars[n - 1] == self.chars[n - 2]
            && matches!(
                self.chars[n - 1],
                'b' | 'd' | 'f' | 'g' | 'm' | 'n' | 'p' | 'r' | 't'
            );
        if doubled {
            if n == 3 && matches!(self.chars[0], 'a' | 'e' | 'o') {
                return;
            }
            self.chars.pop();
            return;
        }
        if n == self.p1 && self.short_syllable_at(n) {
            self.chars.push('e');
        }
    }

    fn step_1c(&mut self) {
        let n = self.len();
        if n >= 3 && matches!(self.chars[n - 1], 'y' | 'Y') && !is_vowel(self.chars[n - 2]) {
            self.chars[n - 1] = 'i';
        }
    }

    fn step_2(&mut self) {
        const TABLE: &[(&str, &str)] = &[
            ("anci", "ance"),
            ("enci", "ence"),
            ("ogi", "og"),
            ("li", ""),
            ("bli", "ble"),
            ("abli", "able"),
            ("alli", "al"),
            ("fulli", "ful"),
            ("lessli", "less"),
            ("ousli", "ous"),
            ("entli", "ent"),
            ("aliti", "al"),
            ("biliti", "ble"),
            ("iviti", "ive"),
            ("tional", "tion"),
            ("ational", "ate"),
            ("alism", "al"),
            ("ation", "ate"),
            ("ization", "ize"),
            ("izer", "ize"),
            ("ator", "ate"),
            ("iveness", "ive"),
            ("fulness", "ful"),
            ("ousness", "ous"),
            ("ogist", "og"),
        ];
        let Some((suffix, with)) = self.longest_suffix(TABLE) else {
            return;
        };
        let slen = suffix.chars().count();
        if !self.in_r1(slen) {
            return;
        }
        let before = (self.len() > slen).then(|| self.chars[self.len() - slen - 1]);
        match suffix {
            "ogi" if before != Some('l') => {}
            "li" if !before.is_some_and(is_valid_li) => {}
            _ => self.replace_suffix(slen, with),
        }
    }

    fn step_3(&mut self) {
        const TABLE: &[(&str, &str)] = &[
            ("icate", "ic"),
            ("ative", ""),
            ("alize", "al"),
            ("iciti", "ic"),
            ("ical", "ic"),
            ("tional", "tion"),
            ("ational", "ate"),
            ("ful", ""),
            ("ness", ""),
        ];
        let Some((suffix, with)) = self.longest_suffix(TABLE) else {
            return;
        };
        let slen = suffix.chars().count();
        if !self.in_r1(slen) {
            return;
        }
        if suffix == "ative" && !self.in_r2(slen) {
            return;
        }
        self.replace_suffix(slen, with);
    }

    fn step_4(&mut self) {
        const TABLE: &[(&str, ())] = &[
            ("ic", ()),
            ("ance", ()),
            ("ence", ()),
            ("able", ()),
            ("ible", ()),
            ("ate", ()),
            ("ive", ()),
            ("ize", ()),
            ("iti", ()),
            ("al", ()),
            ("ism", ()),
            ("ion", ()),
            ("er", ()),
            ("ous", ()),
            ("ant", ()),
            ("ent", ()),
            ("ment", ()),
            ("ement", ()),
        ];
        let Some((suffix, ())) = self.longest_suffix(TABLE) else {
            return;
        };
        let slen = suffix.chars().count();
        if !self.in_r2(slen) {
            return;
        }
        if suffix == "ion" {
            let n = self.len();
            if n > slen && matches!(self.chars[n - slen - 1], 's' | 't') {
                self.replace_suffix(slen, "");
            }
        } else {
            self.replace_suffix(slen, "");
        }
    }

    fn step_5(&mut self) {
        let n = self.len();
        match self.chars.last() {
            Some('e') => {
                if self.in_r2(1) || (self.in_r1(1) && !self.short_syllable_at(n - 1)) {
                    self.chars.pop();
                }
            }
            Some('l') if self.in_r2(1) && n >= 2 && self.chars[n - 2] == 'l' => {
                self.chars.pop();
            }
            _ => {}
        }
    }

    fn postlude(self) -> String {
        if self.y_found {
            self.chars
                .into_iter()
                .map(|c| if c == 'Y' { 'y' } else { c })
                .collect()
        } else {
            self.chars.into_iter().collect()
        }
    }
}
