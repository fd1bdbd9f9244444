#!/usr/bin/env python3
"""Generate the bundled desk corpus (data/corpus/desk.jsonl).

Samples are small, conventionally formatted Java and Python programs built
from templates whose identifiers are drawn from word pools. Output is
deterministic for a given seed.
"""

import argparse
import json
import random
from pathlib import Path
from string import Template

VERBS = ["get", "compute", "find", "count", "build", "parse", "merge", "sum", "check", "load",
         "make", "filter", "collect", "update", "scan", "read", "apply", "reduce", "pick", "total"]
NOUNS = ["total", "value", "items", "result", "index", "count", "names", "words", "buffer", "score",
         "max", "list", "text", "entry", "node", "limit", "prefix", "digits", "pairs", "window",
         "offset", "record", "token", "line", "block", "weight", "price", "grid", "row", "key"]
ADJS = ["running", "max", "min", "left", "right", "next", "prev", "best", "last", "first",
        "sorted", "unique", "raw", "clean", "partial", "current", "total", "seen", "item", "word"]

JAVA = [
    ("""import java.util.*;

class $Cls {
    public static int $fn(int[] $a) {
        int $b = 0;
        for (int i = 0; i < $a.length; i++) {
            $b += $a[i];
        }
        return $b;
    }
}
""", []),
    ("""import java.util.*;
import java.util.stream.*;

class $Cls {
    public List<Integer> $fn(List<Integer> $a) {
        return $a.stream().filter(x -> x % 2 == 0).map(x -> x * x).collect(Collectors.toList());
    }
}
""", []),
    ("""class $Cls {
    public String $fn(String $a) {
        StringBuilder $b = new StringBuilder();
        for (int i = $a.length() - 1; i >= 0; i--) {
            $b.append($a.charAt(i));
        }
        return $b.toString();
    }
}
""", []),
    ("""import java.util.*;

class $Cls {
    public Map<String, Integer> $fn(String[] $a) {
        Map<String, Integer> $b = new HashMap<>();
        for (String w : $a) {
            $b.put(w, $b.getOrDefault(w, 0) + 1);
        }
        return $b;
    }
}
""", []),
    ("""class $Cls {
    public double $fn(double $a, double $b) {
        double $c = Math.abs($a - $b);
        return Math.sqrt(($a * $a) + ($b * $b)) - $c;
    }
}
""", []),
    ("""class $Cls {
    public boolean $fn(String $a) {
        int $b = 0;
        int $c = $a.length() - 1;
        while ($b < $c) {
            if ($a.charAt($b) != $a.charAt($c)) {
                return false;
            }
            $b++;
            $c--;
        }
        return true;
    }
}
""", []),
    ("""class $Cls {
    public long $fn(int $a) {
        long $b = 0, $c = 1;
        for (int i = 0; i < $a; i++) {
            long $d = $b + $c;
            $b = $c;
            $c = $d;
        }
        return $b;
    }
}
""", []),
    ("""import java.util.*;

class $Cls {
    public int $fn(List<Integer> $a) {
        int $b = Integer.MIN_VALUE;
        for (int v : $a) {
            $b = (v > $b) ? v : $b;
        }
        return $b;
    }
}
""", []),
    ("""import java.util.*;

class $Cls {
    public List<String> $fn(List<String> $a) {
        List<String> $b = new ArrayList<>($a);
        Collections.sort($b, (x, y) -> x.length() - y.length());
        return $b;
    }
}
""", []),
    ("""class $Cls {
    private int $a;
    private final String $b;

    $Cls(String $b) {
        this.$b = $b;
        this.$a = 0;
    }

    public void $fn() {
        this.$a++;
    }

    public String $gn() {
        return this.$b + ":" + String.valueOf(this.$a);
    }
}
""", []),
    ("""class $Cls {
    public boolean $fn(int $a) {
        if ($a < 2) {
            return false;
        }
        for (int i = 2; i * i <= $a; i++) {
            if ($a % i == 0) {
                return false;
            }
        }
        return true;
    }
}
""", []),
    ("""class $Cls {
    public int[] $fn(int[] $a, int $b) {
        int[] $c = new int[$a.length];
        for (int i = 0; i < $a.length; i++) {
            $c[(i + $b) % $a.length] = $a[i];
        }
        return $c;
    }
}
""", []),
    ("""class $Cls {
    public int $fn(String $a) {
        int $b = 0;
        for (char c : $a.toLowerCase().toCharArray()) {
            if ("aeiou".indexOf(c) >= 0) {
                $b++;
            }
        }
        return $b;
    }
}
""", []),
    ("""class $Cls {
    public int $fn(String $a) {
        try {
            return Integer.parseInt($a.trim());
        } catch (NumberFormatException e) {
            return -1;
        }
    }
}
""", []),
    ("""import java.util.*;

class $Cls {
    public int $fn(int[] $a) {
        Set<Integer> $b = new HashSet<>();
        for (int x : $a) {
            $b.add(x);
        }
        return $b.size();
    }
}
""", []),
    ("""class $Cls {
    public int $fn(int $a, int $b) {
        return $b == 0 ? $a : $fn($b, $a % $b);
    }

    public static void main(String[] args) {
        System.out.println(new $Cls().$fn(Integer.parseInt(args[0]), Integer.parseInt(args[1])));
    }
}
""", []),
    ("""class $Cls {
    public int[][] $fn(int[][] $a) {
        int $b = $a.length;
        int $c = $a[0].length;
        int[][] $d = new int[$c][$b];
        for (int i = 0; i < $b; i++) {
            for (int j = 0; j < $c; j++) {
                $d[j][i] = $a[i][j];
            }
        }
        return $d;
    }
}
""", []),
    ("""class $Cls {
    private final int $a;

    $Cls(int $a) {
        this.$a = $a;
    }

    public int $fn(int $b) {
        return this.$a * $b;
    }

    @Override
    public String toString() {
        return "$Cls(" + this.$a + ")";
    }

    @Override
    public int hashCode() {
        return Integer.hashCode(this.$a);
    }
}
""", []),
    ("""import java.util.*;

class $Cls {
    public boolean $fn(String $a) {
        Deque<Character> $b = new ArrayDeque<>();
        for (char c : $a.toCharArray()) {
            if (c == '(') {
                $b.push(c);
            } else if (c == ')') {
                if ($b.isEmpty()) {
                    return false;
                }
                $b.pop();
            }
        }
        return $b.isEmpty();
    }
}
""", []),
    ("""import java.util.*;

class $Cls {
    public int $fn(List<Integer> $a) {
        return $a.stream().mapToInt(Integer::intValue).sum();
    }
}
""", []),
    ("""class $Cls {
    public int $fn(int $a) {
        int $b = 0;
        int $c = Math.abs($a);
        while ($c > 0) {
            $b += $c % 10;
            $c /= 10;
        }
        return ($a < 0) ? -$b : $b;
    }
}
""", []),
    ("""import java.util.*;

class $Cls {
    public String $fn(List<String> $a, String $b) {
        return String.join($b, $a).toUpperCase().trim();
    }

    public static void main(String[] args) {
        List<String> $c = Arrays.asList(args);
        System.out.println(new $Cls().$fn($c, ","));
    }
}
""", []),
    ("""import java.util.*;

class $Cls {
    public List<Integer> $fn(int $a) {
        List<Integer> $b = new ArrayList<>();
        for (int i = 1; i <= $a; i++) {
            if (($a % i) == 0) {
                $b.add(i);
            }
        }
        return $b;
    }
}
""", []),
    ("""class $Cls {
    public int $fn(int[] $a, int $b) {
        int $c = 0;
        int $d = $a.length - 1;
        while ($c <= $d) {
            int $e = ($c + $d) / 2;
            if ($a[$e] == $b) {
                return $e;
            } else if ($a[$e] < $b) {
                $c = $e + 1;
            } else {
                $d = $e - 1;
            }
        }
        return -1;
    }
}
""", []),
]

PY = [
    ("""def $fn($a):
    $b = 0
    for $c in $a:
        $b += $c * $c
    return $b
""", ["assert $fn([1, 2, 3]) == 14"]),
    ("""def $fn($a):
    return [$b for $b in $a if $b % 2 == 0]
""", ["assert $fn([1, 2, 3, 4]) == [2, 4]"]),
    ("""def $fn($a):
    return $a[::-1] == $a
""", ["assert $fn('abba')", "assert not $fn('abc')"]),
    ("""def $fn($a, $b):
    $c = {}
    for $d in $a:
        $c[$d] = $c.get($d, 0) + $b
    return $c
""", ["assert $fn(['x', 'x'], 1) == {'x': 2}"]),
    ("""import math


def $fn($a):
    return math.factorial($a) // (math.factorial($a - 2) * 2)
""", ["assert $fn(4) == 6"]),
    ("""def $fn($a):
    if len($a) < 2:
        return None
    $b = sorted(set($a))
    return $b[-2] if len($b) > 1 else None
""", ["assert $fn([3, 1, 2]) == 2"]),
    ("""def $fn($a):
    $b, $c = 0, 1
    for _ in range($a):
        $b, $c = $c, $b + $c
    return $b
""", ["assert $fn(10) == 55"]),
    ("""class $Cls:
    def __init__(self, $a):
        self.$a = $a
        self.$b = []

    def $fn(self, $c):
        self.$b.append($c)
        return len(self.$b) <= self.$a

    def $gn(self):
        return self.$b[-1] if self.$b else None
""", []),
    ("""def $fn($a):
    $b = []
    for $c in range(len($a)):
        $b.append(sum($a[:$c + 1]))
    return $b
""", ["assert $fn([1, 2, 3]) == [1, 3, 6]"]),
    ("""def $fn($a):
    $b = $a.split()
    return ' '.join($d.capitalize() for $d in $b)
""", ["assert $fn('a b') == 'A B'"]),
    ("""def $fn($a, $b):
    while $b:
        $a, $b = $b, $a % $b
    return abs($a)
""", ["assert $fn(12, 18) == 6"]),
    ("""def $fn($a):
    if $a < 2:
        return False
    for $b in range(2, int($a ** 0.5) + 1):
        if $a % $b == 0:
            return False
    return True
""", ["assert $fn(7)", "assert not $fn(8)"]),
    ("""def $fn($a):
    $b = [[0] * len($a) for _ in range(len($a[0]))]
    for $c in range(len($a)):
        for $d in range(len($a[0])):
            $b[$d][$c] = $a[$c][$d]
    return $b
""", ["assert $fn([[1, 2]]) == [[1], [2]]"]),
    ("""def $fn($a):
    $b = {}
    for $c in $a:
        $b.setdefault(len($c), []).append($c)
    return dict(sorted($b.items()))
""", []),
    ("""def $fn($a, $b=1):
    return [$c * $b for $c in $a[1:]]
""", ["assert $fn([1, 2, 3], 2) == [4, 6]"]),
    ("""def $fn($a):
    $b = 0
    $c = abs($a)
    while $c > 0:
        $b += $c % 10
        $c //= 10
    return -$b if $a < 0 else $b
""", ["assert $fn(-123) == -6"]),
    ("""def $fn($a):
    $b = []
    for $c in $a:
        if $c == '(':
            $b.append($c)
        elif $c == ')':
            if not $b:
                return False
            $b.pop()
    return len($b) == 0
""", ["assert $fn('(())')", "assert not $fn('(()')"]),
    ("""def $fn($a):
    $b = sorted($a, key=lambda $c: ($c[1], $c[0]))
    return [$d[0] for $d in $b]
""", ["assert $fn([('a', 2), ('b', 1)]) == ['b', 'a']"]),
    ("""def $fn($a, $b):
    $c = 0
    $d = len($a) - 1
    while $c <= $d:
        $e = ($c + $d) // 2
        if $a[$e] == $b:
            return $e
        if $a[$e] < $b:
            $c = $e + 1
        else:
            $d = $e - 1
    return -1
""", ["assert $fn([1, 3, 5], 5) == 2"]),
    ("""def $fn($a):
    $b = max($a) - min($a)
    print(($b, len($a)))
    return $b
""", ["assert $fn([1, 4]) == 3"]),
    ("""def $fn($a):
    $b = {}
    for $c, $d in enumerate($a):
        if $d in $b:
            return [$b[$d], $c]
        $b[$d] = $c
    return []
""", ["assert $fn([1, 2, 1]) == [0, 2]"]),
    ("""def $fn($a):
    $b = [x for x in $a if x > 0]
    return f"{len($b)} of {len($a)}"
""", ["assert $fn([1, -1]) == '1 of 2'"]),
    ("""def $fn($a, $b):
    $c = list(zip($a, $b))
    return sum(($d - $e) ** 2 for $d, $e in $c)
""", ["assert $fn([1, 2], [1, 4]) == 4"]),
    ("""def $fn($a):
    $b = $a.strip().lower()
    $c = [ch for ch in $b if ch.isalnum()]
    return ''.join($c) == ''.join($c[::-1])
""", ["assert $fn('A man a plan')  is not None"]),
]


def words(rng, case, count):
    used = set()
    out = []
    while len(out) < count:
        shape = rng.random()
        if shape < 0.15:
            parts = [rng.choice(NOUNS)]
        elif shape < 0.85:
            parts = [rng.choice(ADJS + VERBS), rng.choice(NOUNS)]
        else:
            parts = [rng.choice(VERBS), rng.choice(ADJS), rng.choice(NOUNS)]
        if len(set(parts)) != len(parts):
            continue
        if case == "camel":
            name = parts[0] + "".join(p.capitalize() for p in parts[1:])
        elif case == "snake":
            name = "_".join(parts)
        else:
            name = "".join(p.capitalize() for p in parts)
        if name in used or name in RESERVED:
            continue
        used.add(name)
        out.append(name)
    return out


RESERVED = {"max", "min", "sum", "list", "index", "count", "len", "range", "sorted", "next", "filter",
            "map", "set", "dict", "abs", "print", "zip", "total", "value"}


def draw_names(rng, case, sample_no):
    names = words(rng, case, 5)
    fn, gn = words(rng, case, 2)
    cls = words(rng, "pascal", 1)[0] + str(sample_no)
    return dict(zip("abcde", names), fn=fn, gn=gn, Cls=cls)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "corpus" / "desk.jsonl"))
    ap.add_argument("--per-language", type=int, default=200)
    ap.add_argument("--seed", type=int, default=20240611)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    lines = []
    for lang, pool, case in (("java", JAVA, "camel"), ("python", PY, "snake")):
        for k in range(args.per_language):
            template, patches = pool[k % len(pool)]
            names = draw_names(rng, case, k)
            source = Template(template).substitute(names)
            patch_text = [Template(p).substitute(names) for p in patches]
            record = {"id": f"{lang}-{k:03d}", "language": lang, "source": source}
            if patch_text:
                record["patches"] = patch_text
            lines.append(json.dumps(record, ensure_ascii=False))
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} samples to {out}")


if __name__ == "__main__":
    main()
