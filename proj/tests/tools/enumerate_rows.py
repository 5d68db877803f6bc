# Copyright 2026 The vqc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Expected result rows for corpus cases, enumerated by hand.

Each case function walks the fixture triples directly in Python; no SPARQL
engine is involved, so the rows are independent of the generated queries.

Usage:
  enumerate_rows.py [--check] CORPUS_DIR FIXTURE.ttl

Without --check the rows are written to CORPUS_DIR/<case>/expected.rows.json;
with --check the existing files are compared and differences reported.
"""

import json
import os
import sys
from collections import defaultdict
from decimal import Decimal

from rdflib import Graph, Literal, URIRef
from rdflib.namespace import RDF

NS = "http://lumii.lv/ontologies/2016/mini-bkus-en#"
CASES = {}


def case(cid, *variables):
    def register(fn):
        CASES[cid] = (list(variables), fn)
        return fn
    return register


class Data:
    def __init__(self, graph):
        self.out = defaultdict(list)
        self.inc = defaultdict(list)
        for s, p, o in graph:
            self.out[(s, p)].append(o)
            self.inc[(o, p)].append(s)

    def values(self, s, prop):
        return sorted(self.out[(s, URIRef(NS + prop))])

    def value(self, s, prop):
        v = self.values(s, prop)
        return v[0] if v else None

    def py(self, s, prop):
        v = self.value(s, prop)
        return None if v is None else v.toPython()

    def instances(self, cls):
        return sorted(self.inc[(URIRef(NS + cls), RDF.type)])

    def subjects(self, prop, o):
        return sorted(self.inc[(o, URIRef(NS + prop))])


def cell(v):
    if v is None:
        return None
    if isinstance(v, URIRef):
        return {"type": "uri", "value": str(v)}
    if isinstance(v, Literal):
        c = {"type": "literal", "value": str(v)}
        if v.language:
            c["xml:lang"] = v.language
        elif v.datatype:
            c["datatype"] = str(v.datatype)
        return c
    if isinstance(v, bool):
        return {"type": "literal", "value": "true" if v else "false"}
    if isinstance(v, (int, Decimal, float)):
        return {"type": "literal", "value": str(v)}
    return {"type": "literal", "value": str(v)}


def episodes(d):
    return d.instances("HospitalEpisode")


@case("01-episode-treatment-count", "caseRecordNo", "T_count")
def episode_treatment_count(d):
    rows = []
    for e in episodes(d):
        n = sum(1 for t in d.values(e, "treatmentInWard")
                if t in d.instances("TreatmentInWard"))
        if n >= 4:
            rows.append((d.value(e, "caseRecordNo"), n))
    return sorted(rows, key=lambda r: -r[1])


@case("02-bind-field", "caseRecordNo", "t")
def bind_field(d):
    rows = []
    for e in episodes(d):
        cost = d.py(e, "totalCost")
        rows.append((d.value(e, "caseRecordNo"),
                     None if cost is None else cost - 3))
    return rows


@case("03-constant-condition", "lengthInDays")
def constant_condition(d):
    return [(d.value(e, "lengthInDays"),) for e in episodes(d)
            if d.py(e, "caseRecordNo") == 101]


@case("04-single-valued-filter", "caseRecordNo")
def single_valued_filter(d):
    return [(d.value(e, "caseRecordNo"),) for e in episodes(d)
            if (d.py(e, "lengthInDays") or 0) >= 10]


@case("05-multi-valued-filter", "caseRecordNo")
def multi_valued_filter(d):
    return [(d.value(e, "caseRecordNo"),) for e in episodes(d)
            if any(str(c) == "K35" for x in d.values(e, "diagnosis")
                   for c in d.values(x, "code"))]


@case("06-local-aggregate", "caseRecordNo", "treatmentInWard_COUNT")
def local_aggregate(d):
    rows = []
    for e in episodes(d):
        n = len(d.values(e, "treatmentInWard"))
        rows.append((d.value(e, "caseRecordNo"), n if n else None))
    return rows


@case("07-optional-link", "caseRecordNo", "code")
def optional_link(d):
    rows = []
    for e in episodes(d):
        diags = [x for x in d.values(e, "diagnosis")
                 if x in d.instances("Diagnosis")]
        if not diags:
            rows.append((d.value(e, "caseRecordNo"), None))
        for x in diags:
            rows.append((d.value(e, "caseRecordNo"), d.value(x, "code")))
    return rows


@case("08-negated-link", "lengthInDays")
def negated_link(d):
    return [(d.value(e, "lengthInDays"),) for e in episodes(d)
            if not d.values(e, "treatmentInWard")]


def male_patients(d):
    return [(d.value(p, "name"),) for p in d.instances("Patient")
            if d.py(p, "gender") == "male"]


case("09-string-simple", "name")(male_patients)
case("11-string-off", "name")(male_patients)


def treatments_per_ward(d):
    rows = []
    for w in d.instances("Ward"):
        n = sum(1 for t in d.subjects("ward", w)
                if t in d.instances("TreatmentInWard"))
        if n:
            rows.append((d.value(w, "wardName"), n))
    return rows


case("12-ward-treatment-count", "wardName", "N")(treatments_per_ward)
case("13-implicit-grouping", "WN", "N")(treatments_per_ward)


def by_cost(d):
    rows = [(d.value(e, "caseRecordNo"), d.value(e, "totalCost"))
            for e in episodes(d)]
    # Unbound sorts lowest, so it comes last in descending order.
    return sorted(rows, key=lambda r: -(r[1].toPython() if r[1] else -1e18))


@case("14-order-limit", "caseRecordNo", "totalCost")
def order_limit(d):
    return by_cost(d)[:2]


@case("15-offset", "caseRecordNo", "totalCost")
def offset(d):
    return by_cost(d)[1:3]


@case("16-distinct", "gender")
def distinct_gender(d):
    genders = {d.value(p, "gender") for e in episodes(d)
               for p in d.values(e, "patient")}
    return [(g,) for g in sorted(genders, key=lambda g: (g is None, g))]


@case("17-union", "caseRecordNo")
def union(d):
    found = set()
    for e in episodes(d):
        i21 = any(str(c) == "I21" for x in d.values(e, "diagnosis")
                  for c in d.values(x, "code"))
        male = any(d.py(p, "gender") == "male" for p in d.values(e, "patient"))
        if i21 or male:
            found.add(d.py(e, "caseRecordNo"))
    return [(v,) for v in sorted(found, key=lambda v: (v is None, v or 0))]


@case("18-existence-check", "caseRecordNo")
def existence_check(d):
    return [(d.value(e, "caseRecordNo"),) for e in episodes(d)
            if any(str(c) == "I21" for x in d.values(e, "diagnosis")
                   for c in d.values(x, "code"))]


@case("19-negated-subquery", "caseRecordNo")
def negated_subquery(d):
    return [(d.value(e, "caseRecordNo"),) for e in episodes(d)
            if not d.values(e, "diagnosis")]


@case("20-global-subquery", "caseRecordNo")
def global_subquery(d):
    lengths = [d.py(e, "lengthInDays") for e in episodes(d)
               if d.value(e, "lengthInDays") is not None]
    avg = Decimal(sum(lengths)) / len(lengths)
    return [(d.value(e, "caseRecordNo"),) for e in episodes(d)
            if d.value(e, "lengthInDays") is not None
            and d.py(e, "lengthInDays") > avg]


@case("21-class-variable", "C", "caseRecordNo")
def class_variable(d):
    rows = []
    for (s, p), objs in d.out.items():
        if p != URIRef(NS + "caseRecordNo"):
            continue
        for cls in d.out[(s, RDF.type)]:
            for v in objs:
                rows.append((cls, v))
    return sorted(rows)


@case("22-instance-resource", "lengthInDays", "caseRecordNo")
def instance_resource(d):
    e1 = URIRef(NS + "e1")
    return [(d.value(e1, "lengthInDays"), d.value(e1, "caseRecordNo"))]


@case("25-like", "name")
def like(d):
    return [(d.value(p, "name"),) for p in d.instances("Patient")
            if str(d.value(p, "name") or "").startswith("B")]


@case("26-between", "caseRecordNo")
def between(d):
    return [(d.value(e, "caseRecordNo"),) for e in episodes(d)
            if 5 <= (d.py(e, "lengthInDays") or -1) <= 15]


@case("27-in-list", "lengthInDays")
def in_list(d):
    return [(d.value(e, "lengthInDays"),) for e in episodes(d)
            if d.py(e, "caseRecordNo") in (101, 103)]


@case("28-inverse-path", "name")
def inverse_path(d):
    return [(d.value(p, "name"),) for p in d.instances("Patient")
            if any((d.py(e, "lengthInDays") or 0) > 10
                   for e in d.subjects("patient", p))]


@case("29-path-field", "caseRecordNo", "name")
def path_field(d):
    rows = []
    for e in episodes(d):
        names = [n for p in d.values(e, "patient") for n in d.values(p, "name")]
        for n in names or [None]:
            rows.append((d.value(e, "caseRecordNo"), n))
    return rows


@case("30-lang-field", "caseRecordNo", "title")
def lang_field(d):
    rows = []
    for e in episodes(d):
        titles = [t for t in d.values(e, "title") if t.language == "en"]
        for t in titles or [None]:
            rows.append((d.value(e, "caseRecordNo"), t))
    return rows


@case("33-same-instance", "caseRecordNo", "lengthInDays")
def same_instance(d):
    return [(d.value(e, "caseRecordNo"), d.value(e, "lengthInDays"))
            for e in episodes(d)]


@case("34-cross-product", "name", "wardName")
def cross_product(d):
    return [(d.value(p, "name"), d.value(w, "wardName"))
            for p in d.instances("Patient") for w in d.instances("Ward")]


@case("35-helper-field", "caseRecordNo")
def helper_field(d):
    return [(d.value(e, "caseRecordNo"),) for e in episodes(d)
            if d.value(e, "totalCost") is not None
            and d.py(e, "totalCost") * 2 > 1000]


@case("36-full-sparql", "caseRecordNo")
def full_sparql(d):
    return [(d.value(e, "caseRecordNo"),) for e in episodes(d)
            if any(v.toPython() < 10 for v in d.values(e, "lengthInDays"))]


@case("37-indirect-membership", "caseRecordNo")
def indirect_membership(d):
    # The fixture has no subclass axioms, so direct members are all members.
    return [(d.value(e, "caseRecordNo"),) for e in episodes(d)]


@case("41-main-sum", "S")
def main_sum(d):
    return [(sum(d.py(e, "totalCost") for e in episodes(d)
                 if d.value(e, "totalCost") is not None),)]


@case("42-count-distinct", "P")
def count_distinct(d):
    return [(len({p for e in episodes(d) for p in d.values(e, "patient")}),)]


def results_json(variables, rows):
    bindings = []
    for row in rows:
        b = {}
        for var, v in zip(variables, row):
            c = cell(v)
            if c is not None:
                b[var] = c
        bindings.append(b)
    return {"head": {"vars": variables}, "results": {"bindings": bindings}}


def main(argv):
    check = "--check" in argv
    args = [a for a in argv[1:] if a != "--check"]
    if len(args) != 2:
        print(__doc__, file=sys.stderr)
        return 2
    corpus, fixture = args
    graph = Graph()
    graph.parse(fixture, format="turtle")
    data = Data(graph)
    bad = 0
    for cid, (variables, fn) in sorted(CASES.items()):
        path = os.path.join(corpus, cid, "expected.rows.json")
        doc = results_json(variables, fn(data))
        text = json.dumps(doc, indent=2) + "\n"
        if check:
            with open(path) as f:
                if json.load(f) != doc:
                    print("differs: " + cid)
                    bad += 1
        else:
            with open(path, "w") as f:
                f.write(text)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
