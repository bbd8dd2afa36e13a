//! Factorization tables as originally published, transcribed verbatim
//! (including their misprints). [`crate::sequences::reproduce_table`] checks
//! its own results against these rows.

/// One published row. `factors` holds the printed tokens in printed order;
/// an empty list stands for the "-" entry of the unit row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PublishedRow {
    pub k: usize,
    pub r: usize,
    pub value: &'static str,
    pub factors: &'static [&'static str],
}

const fn row(
    k: usize,
    r: usize,
    value: &'static str,
    factors: &'static [&'static str],
) -> PublishedRow {
    PublishedRow {
        k,
        r,
        value,
        factors,
    }
}

/// `a(k) = 10^k + 1` for `k = 0..=25` (`a(0) = 1`).
pub const TABLE_1: [PublishedRow; 26] = [
    row(0, 2, "1", &[]),
    row(1, 2, "11", &["11"]),
    row(2, 2, "101", &["101"]),
    row(3, 2, "1001", &["7", "11", "13"]),
    row(4, 2, "10001", &["73", "137"]),
    row(5, 2, "100001", &["11", "9091"]),
    row(6, 2, "1000001", &["101", "9901"]),
    row(7, 2, "10000001", &["11", "909091"]),
    row(8, 2, "100000001", &["17", "5882353"]),
    row(9, 2, "1000000001", &["7", "11", "13", "19", "52579"]),
    row(10, 2, "10000000001", &["101", "3541", "27961"]),
    row(11, 2, "100000000001", &["11", "23", "4093", "8779"]),
    row(12, 2, "1000000000001", &["73", "137", "99990001"]),
    row(13, 2, "10000000000001", &["11", "859", "1058313049"]),
    row(14, 2, "100000000000001", &["29", "101", "281", "121499449"]),
    row(
        15,
        2,
        "1000000000000001",
        &["7", "11", "13", "211", "241", "2161", "9091"],
    ),
    row(
        16,
        2,
        "10000000000000001",
        &["353", "449", "641", "1409", "69857"],
    ),
    row(
        17,
        2,
        "100000000000000001",
        &["11", "103", "4013", "21993833369"],
    ),
    row(
        18,
        2,
        "1000000000000000001",
        &["101", "9901", "999999000001"],
    ),
    row(19, 2, "10000000000000000001", &["11", "909090909090909091"]),
    row(
        20,
        2,
        "100000000000000000001",
        &["73", "137", "1676321", "5964848081"],
    ),
    row(
        21,
        2,
        "1000000000000000000001",
        &["7", "11", "13", "127", "2689", "459691", "909091"],
    ),
    row(
        22,
        2,
        "10000000000000000000001",
        &["89", "101", "1052788969", "1056689261"],
    ),
    row(
        23,
        2,
        "100000000000000000000001",
        &["11", "47", "139", "2531", "549797184491917"],
    ),
    row(
        24,
        2,
        "1000000000000000000000001",
        &["17", "5882353", "9999999900000001"],
    ),
    row(
        25,
        2,
        "10000000000000000000000001",
        &["11", "251", "5051", "9091", "78875943472201"],
    ),
];

/// `b(r - 1) = s(3, r)` for `r = 1..=9`.
pub const TABLE_2: [PublishedRow; 9] = [
    row(3, 1, "1", &[]),
    row(3, 2, "1001", &["7", "11", "13"]),
    row(3, 3, "1001001", &["3", "333667"]),
    row(3, 4, "1001001001", &["7", "11", "13", "101", "9091"]),
    row(3, 5, "1001001001001", &["31", "41", "271", "2906161"]),
    row(
        3,
        6,
        "1001001001001001",
        &["3", "7", "11", "13", "19", "52579", "333667"],
    ),
    row(
        3,
        7,
        "1001001001001001001",
        &["43", "239", "1933", "4649", "10838689"],
    ),
    row(
        3,
        8,
        "1001001001001001001001",
        &["7", "11", "13", "73", "101", "137", "9901", "99990001"],
    ),
    row(
        3,
        9,
        "1001001001001001001001001",
        &["33", "757", "333667", "440334654777631"],
    ),
];

/// `s(j, r)` for `(1, 1)` and the nine pairs with `j + r = 11`.
pub const TABLE_3: [PublishedRow; 10] = [
    row(1, 1, "1", &[]),
    row(
        2,
        10,
        "1010101010101010101",
        &["41", "101", "271", "3541", "9091", "27961"],
    ),
    row(
        3,
        9,
        "1001001001001001001001001",
        &["3", "3", "757", "333667", "440334654777631"],
    ),
    row(
        4,
        8,
        "10001000100010001000100010001",
        &[
            "17", "73", "137", "353", "449", "641", "1409", "69857", "5882353",
        ],
    ),
    row(
        5,
        7,
        "1000010000100001000010000100001",
        &["71", "239", "4649", "123551", "102598800232111471"],
    ),
    row(
        6,
        6,
        "1000001000001000001000001000001",
        &["3", "19", "101", "9901", "52579", "333667", "999999000001"],
    ),
    row(
        7,
        5,
        "10000001000000100000010000001",
        &["41", "71", "271", "123551", "102598800232111471"],
    ),
    row(
        8,
        4,
        "1000000010000000100000001",
        &["17", "353", "449", "641", "1409", "69857", "5882353"],
    ),
    row(
        9,
        3,
        "1000000001000000001",
        &["3", "757", "440334654777631"],
    ),
    row(10, 2, "10000000001", &["101", "3541", "27961"]),
];

/// The published rows of table 1, 2 or 3.
pub fn published_table(which: u8) -> Option<&'static [PublishedRow]> {
    match which {
        1 => Some(&TABLE_1),
        2 => Some(&TABLE_2),
        3 => Some(&TABLE_3),
        _ => None,
    }
}
