// Copyright 2026 The privrel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "privrel/database.hpp"
#include "privrel/error.hpp"
#include "privrel/predicate.hpp"
#include "privrel/queryset.hpp"
#include "privrel/rng.hpp"
#include "privrel/subsample.hpp"

using namespace privrel;

namespace {

Database make_db(std::initializer_list<const char*> rows) {
  std::vector<BitVec> items;
  std::size_t d = 0;
  for (const char* row : rows) {
    items.push_back(BitVec::from_string(row));
    d = items.back().size();
  }
  return Database(d, std::move(items));
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents) {
    static int counter = 0;
    path = "privrel_test_" + std::to_string(counter++) + ".csv";
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_SUITE("bitvec") {
  TEST_CASE("round trips strings and tracks bits") {
    const BitVec v = BitVec::from_string("10110");
    CHECK(v.size() == 5);
    CHECK(v.popcount() == 3);
    CHECK(v.to_string() == "10110");
    CHECK(v.get(0));
    CHECK_FALSE(v.get(1));
  }

  TEST_CASE("rejects non-bit characters") {
    CHECK_THROWS_AS(BitVec::from_string("10x"), Error);
  }

  TEST_CASE("lexicographic order follows the bit string") {
    CHECK(BitVec::lex_less(BitVec::from_string("01"), BitVec::from_string("10")));
    CHECK_FALSE(
        BitVec::lex_less(BitVec::from_string("10"), BitVec::from_string("01")));
    CHECK(BitVec::lex_less(BitVec::from_string("1"), BitVec::from_string("10")));
  }

  TEST_CASE("negation clears padding so equality stays word-wise") {
    const BitVec v = BitVec::from_string("100");
    const BitVec neg = ~v;
    CHECK(neg.to_string() == "011");
    CHECK(~neg == v);
  }

  TEST_CASE("works across word boundaries") {
    BitVec v(130);
    v.set(0, true);
    v.set(64, true);
    v.set(129, true);
    CHECK(v.popcount() == 3);
    CHECK((~v).popcount() == 127);
    BitVecHash h;
    CHECK(h(v) != h(~v));
  }
}

TEST_SUITE("database") {
  TEST_CASE("validates dimension and emptiness") {
    CHECK_THROWS_AS(Database(3, {}), Error);
    CHECK_THROWS_AS(
        Database(3, {BitVec::from_string("10")}), Error);
  }

  TEST_CASE("loads strict CSV") {
    TempFile f("1,0,1\n0,0,0\n1,1,1\n");
    const Database db = load_database_csv(f.path, false);
    CHECK(db.size() == 3);
    CHECK(db.dimension() == 3);
    CHECK(db.item(0) == BitVec::from_string("101"));
  }

  TEST_CASE("reports the offending row for non-bit tokens") {
    TempFile f("1,0\n1,2\n");
    try {
      load_database_csv(f.path, false);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kParse);
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
  }

  TEST_CASE("skips an optional header row") {
    TempFile f("a,b\n1,0\n");
    const Database db = load_database_csv(f.path, true);
    CHECK(db.size() == 1);
    CHECK(db.dimension() == 2);
  }

  TEST_CASE("adjacency is multiset edit distance at equal sizes") {
    const Database a = make_db({"10", "01", "11"});
    const Database b = make_db({"01", "10", "00"});  // one item swapped
    const Database c = make_db({"00", "00", "11"});
    CHECK(adjacent(a, a));
    CHECK(adjacent(a, b));
    CHECK_FALSE(adjacent(a, c));
    CHECK(multiset_edit_distance(a, c) == 2);
  }
}

TEST_SUITE("predicate") {
  const PredicateSpec conj = PredicateSpec::monotone_conjunction();
  const PredicateSpec parity = PredicateSpec::parity();

  TEST_CASE("conjunction examples") {
    CHECK(eval_predicate(conj, BitVec::from_bits({1, 0}),
                         BitVec::from_bits({1, 1})));
    CHECK_FALSE(eval_predicate(conj, BitVec::from_bits({1, 1}),
                               BitVec::from_bits({1, 0})));
  }

  TEST_CASE("parity examples") {
    CHECK(eval_predicate(parity, BitVec::from_bits({1, 1}),
                         BitVec::from_bits({1, 0})));
    CHECK_FALSE(eval_predicate(parity, BitVec::from_bits({1, 1}),
                               BitVec::from_bits({1, 1})));
  }

  TEST_CASE("dimension mismatch is an explicit error") {
    CHECK_THROWS_AS(eval_predicate(conj, BitVec::from_string("10"),
                                   BitVec::from_string("100")),
                    Error);
  }

  TEST_CASE("the two conjunction forms agree everywhere (d <= 8)") {
    // Product form AND_{i: q_i=1} u_i versus 1 - OR_{i: u_i=0} q_i.
    for (std::size_t d = 1; d <= 8; d += 7) {
      for (const BitVec& q : enumerate_full_cube(d)) {
        for (const BitVec& u : enumerate_full_cube(d)) {
          bool and_form = true;
          bool or_violated = false;
          for (std::size_t i = 0; i < d; ++i) {
            if (q.get(i) && !u.get(i)) and_form = false;
            if (!u.get(i) && q.get(i)) or_violated = true;
          }
          CHECK(eval_predicate(conj, q, u) == and_form);
          CHECK(eval_predicate(conj, q, u) == !or_violated);
        }
      }
    }
  }

  TEST_CASE("counting query examples") {
    const Database db = make_db({"11", "10", "00"});
    CHECK(counting_query(db, conj, BitVec::from_bits({1, 0})) ==
          doctest::Approx(2.0 / 3.0));
    CHECK(counting_query(db, conj, BitVec::from_bits({0, 0})) == 1.0);
    const Database single = make_db({"11"});
    CHECK(counting_query(single, parity, BitVec::from_bits({1, 1})) == 0.0);
  }

  TEST_CASE("counting query is permutation invariant and a multiple of 1/n") {
    const Database db = make_db({"110", "011", "101", "000"});
    const Database shuffled = make_db({"000", "101", "110", "011"});
    for (const BitVec& q : enumerate_full_cube(3)) {
      const double a = counting_query(db, conj, q);
      CHECK(a == counting_query(shuffled, conj, q));
      const double scaled = a * 4.0;
      CHECK(scaled == doctest::Approx(std::round(scaled)));
    }
  }

  TEST_CASE("threshold query boundaries are inclusive") {
    const Database db = make_db({"11", "10", "00"});
    const BitVec q = BitVec::from_bits({1, 0});  // f = 2/3
    CHECK(threshold_query(db, conj, q, 0.5));
    CHECK(threshold_query(db, conj, q, 2.0 / 3.0));
    CHECK_FALSE(threshold_query(db, conj, q, 0.7));
    const BitVec none = BitVec::from_bits({1, 1});
    CHECK_FALSE(threshold_query(make_db({"10"}), conj, none, 0.1));
  }

  TEST_CASE("threshold query is non-increasing in t") {
    const Database db = make_db({"110", "010", "011", "111"});
    for (const BitVec& q : enumerate_full_cube(3)) {
      bool prev = true;
      for (double t = 0.0; t <= 1.0; t += 0.05) {
        const bool curr = threshold_query(db, conj, q, t);
        if (!prev) CHECK_FALSE(curr);
        prev = curr;
      }
    }
  }

  TEST_CASE("custom predicates round through the hook") {
    const PredicateSpec custom = PredicateSpec::custom(
        [](const BitVec& q, const BitVec& u) { return q == u; });
    CHECK(eval_predicate(custom, BitVec::from_string("10"),
                         BitVec::from_string("10")));
    CHECK_FALSE(eval_predicate(custom, BitVec::from_string("10"),
                               BitVec::from_string("01")));
  }
}

TEST_SUITE("general_to_monotone") {
  TEST_CASE("items gain their negation") {
    const Database db = make_db({"10"});
    const Database doubled = general_to_monotone_database(db);
    CHECK(doubled.dimension() == 4);
    CHECK(doubled.item(0) == BitVec::from_string("1001"));
  }

  TEST_CASE("monotone queries only gain zero padding") {
    GeneralConjunction c;
    c.require_one = BitVec::from_string("10");
    c.require_zero = BitVec::from_string("00");
    CHECK(general_to_monotone_query(c) == BitVec::from_string("1000"));
  }

  TEST_CASE("transform preserves answers for all general conjunctions (d <= 6)") {
    const PredicateSpec conj = PredicateSpec::monotone_conjunction();
    Rng rng(7);
    for (std::size_t d : {2u, 6u}) {
      std::vector<BitVec> items;
      for (int i = 0; i < 12; ++i) {
        BitVec u(d);
        for (std::size_t b = 0; b < d; ++b) u.set(b, rng.next_bernoulli(0.5));
        items.push_back(std::move(u));
      }
      const Database db(d, items);
      const Database doubled = general_to_monotone_database(db);
      // All (ones-mask, zeros-mask) pairs; overlapping masks are legal and
      // simply unsatisfiable.
      for (const BitVec& ones : enumerate_full_cube(d)) {
        for (const BitVec& zeros : enumerate_full_cube(d)) {
          const GeneralConjunction g{ones, zeros};
          const BitVec monotone_q = general_to_monotone_query(g);
          std::size_t direct = 0;
          for (const BitVec& u : db.items()) {
            if (eval_general_conjunction(g, u)) ++direct;
          }
          const double transformed = counting_query(doubled, conj, monotone_q);
          CHECK(static_cast<double>(direct) / db.size() ==
                doctest::Approx(transformed));
          // Locality is preserved.
          CHECK(monotone_q.popcount() == ones.popcount() + zeros.popcount());
        }
      }
    }
  }
}

TEST_SUITE("queryset") {
  TEST_CASE("bk sizes") {
    CHECK(bk_size(10, 3) == 176);
    CHECK(bk_size(8, 2) == 37);
    CHECK(bk_size(4, 1) == 5);
    CHECK(bk_size(4, 4) == 16);
  }

  TEST_CASE("enumeration matches the counts and the weight bound") {
    const std::vector<BitVec> b2 = enumerate_bk(8, 2);
    CHECK(b2.size() == 37);
    for (const BitVec& q : b2) CHECK(q.popcount() <= 2);
    CHECK(enumerate_full_cube(4).size() == 16);
  }

  TEST_CASE("guards oversized enumerations") {
    CHECK_THROWS_AS(enumerate_full_cube(40), Error);
  }
}

TEST_SUITE("subsample") {
  TEST_CASE("identical items always succeed") {
    std::vector<BitVec> items(40, BitVec::from_string("1010"));
    const Database db(4, items);
    Rng rng(3);
    const std::vector<BitVec> queries = enumerate_full_cube(4);
    const SubsampleReport report = subsample_verify(
        db, PredicateSpec::monotone_conjunction(), queries, 0.2, 20, rng);
    CHECK(report.success_fraction == 1.0);
    CHECK(report.worst_max_error == 0.0);
  }

  TEST_CASE("empty query set is an error") {
    const Database db = make_db({"1"});
    Rng rng(1);
    CHECK_THROWS_AS(subsample_verify(db, PredicateSpec::monotone_conjunction(),
                                     {}, 0.2, 1, rng),
                    Error);
  }

  TEST_CASE("d=8 conjunctions over B_2 at alpha=0.2 nearly always succeed") {
    Rng rng(11);
    std::vector<BitVec> items;
    Rng gen = rng.stream("data");
    for (int i = 0; i < 5000; ++i) {
      BitVec u(8);
      for (std::size_t b = 0; b < 8; ++b) u.set(b, gen.next_bernoulli(0.5));
      items.push_back(std::move(u));
    }
    const Database db(8, items);
    const std::vector<BitVec> queries = enumerate_bk(8, 2);
    Rng trial = rng.stream("trials");
    const SubsampleReport report = subsample_verify(
        db, PredicateSpec::monotone_conjunction(), queries, 0.2, 100, trial);
    CHECK(report.subsample_size == 903);  // ceil(10 ln 37 / 0.04)
    CHECK(report.success_fraction >= 0.5);
  }
}
