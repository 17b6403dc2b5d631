"""Python mirror of the C++ tokenizer rules, used by the offline data scripts."""


_SPACE = {0x09, 0x0A, 0x0B, 0x0C, 0x0D, 0x20, 0x85, 0xA0, 0x202F, 0x205F, 0x3000, 0xFEFF}
_JOINERS = {"-", "'", "’"}
_CLITICS = ("'s", "'re", "'ve", "'ll", "'d", "'m")


def _is_space(cp):
    return cp in _SPACE or 0x2000 <= cp <= 0x200B


def _is_punct(cp):
    if cp < 0x80:
        return 0x21 <= cp <= 0x2F or 0x3A <= cp <= 0x40 or 0x5B <= cp <= 0x60 or 0x7B <= cp <= 0x7E
    if 0xA1 <= cp <= 0xBF:
        return cp not in (0xAA, 0xB5, 0xBA)
    return cp in (0xD7, 0xF7) or 0x2010 <= cp <= 0x205E or 0x3001 <= cp <= 0x303F


def _is_word(ch):
    cp = ord(ch)
    return not _is_space(cp) and not _is_punct(cp)


def _split_clitic(word):
    low = word.lower().replace("’", "'")
    if low.endswith("n't") and len(low) > 3:
        return [word[:-3], word[-3:]]
    for c in _CLITICS:
        if low.endswith(c) and len(low) > len(c):
            return [word[: -len(c)], word[-len(c):]]
    return [word]


def tokenize(text):
    out = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if _is_space(ord(ch)):
            i += 1
            continue
        if not _is_word(ch):
            out.append(ch)
            i += 1
            continue
        j = i + 1
        while j < n:
            c = text[j]
            if _is_word(c):
                j += 1
                continue
            if j + 1 < n and _is_word(text[j + 1]):
                if c in _JOINERS:
                    j += 1
                    continue
                if c in ".," and "0" <= text[j - 1] <= "9" and "0" <= text[j + 1] <= "9":
                    j += 1
                    continue
            break
        out.extend(_split_clitic(text[i:j]))
        i = j
    return out
