#include <gtest/gtest.h>

#include "hypermachine/codec.h"
#include "hypermachine/error.h"
#include "test_support.h"

namespace hypermachine {
namespace {

using testing::corpus_machine;
using testing::encodable_corpus_names;

std::string Unary(int n) { return std::string(static_cast<std::size_t>(n), '0'); }

// Hand application of the layout: 0^s 1 0^r 1 0^n 1 0^w 1 0^m.
std::string RuleBits(int s, int r, int n, int w, int m) {
  return Unary(s) + "1" + Unary(r) + "1" + Unary(n) + "1" + Unary(w) + "1" + Unary(m);
}

TEST(EncodeTest, FlipMatchesHandEncoding) {
  // States: q0 -> 1, qf -> 2. Symbols: blank 1, '0' 2, '1' 3. Stay is 3.
  const std::string expected = Unary(1) + "11" + Unary(2) + "1" + Unary(2) + "11" +
                               RuleBits(1, 2, 2, 3, 3) + "11" + RuleBits(1, 3, 2, 2, 3);
  EXPECT_EQ(expected, "011001001101001001000100011010001001001000");
  EXPECT_EQ(encode(corpus_machine("flip")).bits, expected);
}

TEST(EncodeTest, LoopMatchesHandEncoding) {
  EXPECT_EQ(encode(corpus_machine("loop")).bits, "11" + RuleBits(1, 1, 1, 1, 2));
  EXPECT_EQ(encode(corpus_machine("halt_now")).bits, "11");
}

TEST(EncodeTest, RenamingInvariant) {
  const Machine a = corpus_machine("anbn");
  MachineBuilder b("other");
  b.alphabet("10");  // symbol order is irrelevant too
  // Declare states in reverse so the declaration order differs.
  for (StateId s = static_cast<StateId>(a.state_count()); s-- > 0;) {
    b.state("x" + std::to_string(s * 7));
  }
  b.start("x" + std::to_string(a.start() * 7));
  for (const auto& [s, result] : a.finals()) b.final_state("x" + std::to_string(s * 7), result);
  for (const Rule& r : a.rules()) {
    b.rule("x" + std::to_string(r.state * 7), tuple_string(a.alphabet(), r.read, 1),
           "x" + std::to_string(r.action.next * 7), tuple_string(a.alphabet(), r.action.write, 1),
           moves_string(r.action.move, 1));
  }
  EXPECT_EQ(encode(a), encode(b.build()));
}

TEST(EncodeTest, UnreachableStatesFollowReachableOnes) {
  const Machine m = MachineBuilder("m")
                        .alphabet("01")
                        .start("a")
                        .final_state("z", true)
                        .rule("b", "0", "z", "0", "R")  // b is never reached from a
                        .rule("a", "_", "a", "1", "S")
                        .build();
  // a=1 (start), then z and b are unreachable: appended in declaration order
  // of the machine (b was mentioned before z by the first rule).
  const Description d = encode(m);
  EXPECT_TRUE(is_valid(d));
  const Machine back = decode(d);
  EXPECT_EQ(back.state_count(), 3u);
  EXPECT_EQ(encode(back), d);
}

TEST(EncodeTest, RejectsUnsupportedMachines) {
  try {
    encode(corpus_machine("halt4"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUnsupportedClass);
  }
  EXPECT_THROW(encode(MachineBuilder("abc").alphabet("012").start("q").build()), Error);
  // A subset of {0, 1} is fine.
  EXPECT_NO_THROW(encode(MachineBuilder("one").alphabet("1").start("q").build()));
}

TEST(DecodeTest, RoundTripOnCorpus) {
  for (const std::string& name : encodable_corpus_names()) {
    const Machine m = corpus_machine(name);
    const Description d = encode(m);
    const Machine back = decode(d);
    EXPECT_EQ(encode(back), d) << name;
    EXPECT_TRUE(std::holds_alternative<EquivalentUpTo>(observational_equiv(m, back, 4, 500)))
        << name;
  }
}

TEST(DecodeTest, ShortStringsAreInvalid) {
  for (const std::string bits : {"", "0", "1", "110", "111", "011"}) {
    try {
      decode(Description{bits});
      FAIL() << bits;
    } catch (const InvalidEncoding& e) {
      EXPECT_LE(e.position(), bits.size()) << bits;
    }
  }
}

TEST(DecodeTest, ErrorPositionsPointAtFirstViolation) {
  const std::string flip = encode(corpus_machine("flip")).bits;
  // Swap the two rules: the second rule now has a smaller read code.
  const std::string r1 = RuleBits(1, 2, 2, 3, 3), r2 = RuleBits(1, 3, 2, 2, 3);
  const std::string header = Unary(1) + "11" + Unary(2) + "1" + Unary(2) + "11";
  try {
    decode(Description{header + r2 + "11" + r1});
    FAIL();
  } catch (const InvalidEncoding& e) {
    EXPECT_GE(e.position(), header.size() + r2.size());
  }
  // Cutting the last rule before its move field is reported near the end.
  try {
    decode(Description{flip.substr(0, flip.size() - 4)});
    FAIL();
  } catch (const InvalidEncoding& e) {
    EXPECT_GE(e.position(), flip.size() - 8);
    EXPECT_LE(e.position(), flip.size() - 4);
  }
}

TEST(DecodeTest, NonCanonicalNumberingIsRejected) {
  // Start jumps straight to state 3 while state 2 exists: not breadth-first.
  const std::string bits = Unary(1) + "11" + Unary(2) + "1" + Unary(2) + "11" +
                           RuleBits(1, 1, 3, 1, 2) + "11" + RuleBits(3, 1, 2, 1, 2);
  EXPECT_FALSE(is_valid(Description{bits}));
}

TEST(DecodeTest, EmptyMachineIsFirstDescription) {
  const Machine m = decode(Description{"11"});
  EXPECT_EQ(m.state_count(), 1u);
  EXPECT_TRUE(m.rules().empty());
  EXPECT_TRUE(m.finals().empty());
  EXPECT_EQ(m.name(), "decoded");
}

TEST(DescriptionTest, FromTextRejectsOtherCharacters) {
  EXPECT_EQ(description_from_text("0110").bits, "0110");
  EXPECT_THROW(description_from_text("01 2"), Error);
}

TEST(WordIndexTest, DefinedOrder) {
  EXPECT_EQ(word_index(""), 0u);
  EXPECT_EQ(word_index("0"), 1u);
  EXPECT_EQ(word_index("1"), 2u);
  EXPECT_EQ(word_index("00"), 3u);
  EXPECT_EQ(index_word(6), "11");
  EXPECT_EQ(index_word(0), "");
}

TEST(WordIndexTest, BijectionUpToLengthTen) {
  std::uint64_t expected = 0;
  for (const std::string& w : words_up_to("01", 10)) {
    ASSERT_EQ(word_index(w), expected) << w;
    ASSERT_EQ(index_word(expected), w);
    ++expected;
  }
  EXPECT_EQ(expected, 2047u);
}

TEST(WordIndexTest, RejectsNonBitsAndOverlongWords) {
  EXPECT_THROW(word_index("012"), Error);
  EXPECT_THROW(word_index(std::string(64, '1')), Error);
  EXPECT_NO_THROW(word_index(std::string(63, '1')));
}

TEST(EnumerateTest, FirstThreeAreFrozen) {
  const std::vector<Description> first = enumerate_machines(3);
  ASSERT_EQ(first.size(), 3u);
  EXPECT_EQ(first[0].bits, "11");
  EXPECT_EQ(first[1].bits, "01101011");
  EXPECT_EQ(first[2].bits, "011001011");
}

TEST(EnumerateTest, SoundAndOrdered) {
  const std::vector<Description> d = enumerate_machines(500);
  ASSERT_EQ(d.size(), 500u);
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_NO_THROW(decode(d[i])) << i;
    if (i > 0) {
      const bool ordered = d[i - 1].bits.size() < d[i].bits.size() ||
                           (d[i - 1].bits.size() == d[i].bits.size() && d[i - 1].bits < d[i].bits);
      EXPECT_TRUE(ordered) << i;
    }
  }
}

TEST(EnumerateTest, CompleteAgainstBruteForceFilter) {
  // Every valid string up to 22 bits, by testing all 2^23 - 1 strings.
  std::vector<std::string> brute;
  for (std::size_t len = 0; len <= 22; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
      std::string bits(len, '0');
      for (std::size_t i = 0; i < len; ++i) {
        if ((v >> (len - 1 - i)) & 1u) bits[i] = '1';
      }
      if (is_valid(Description{bits})) brute.push_back(bits);
    }
  }
  const std::vector<Description> enumerated = enumerate_machines(brute.size() + 1);
  for (std::size_t i = 0; i < brute.size(); ++i) ASSERT_EQ(enumerated[i].bits, brute[i]) << i;
  EXPECT_GT(enumerated[brute.size()].bits.size(), 22u);
}

TEST(EnumerateTest, LocateFindsIndexOfEnumeratedEntry) {
  const std::vector<Description> d = enumerate_machines(200);
  EXPECT_EQ(locate(d[0], 10), 0u);
  EXPECT_EQ(locate(d[123], 200), 123u);
  EXPECT_FALSE(locate(Description{"110"}, 1000));
  EXPECT_FALSE(locate(encode(corpus_machine("flip")), 10));
}

TEST(UniversalTest, FlipAndLoop) {
  const RunOutcome r = universal_run(encode(corpus_machine("flip")), "0", 10);
  EXPECT_EQ(std::get<HaltedWithResult>(r).result, "1");
  EXPECT_EQ(std::get<HaltedWithResult>(r).steps, 1u);
  const RunOutcome l = universal_run(encode(corpus_machine("loop")), "", 50);
  EXPECT_EQ(std::get<BudgetExhausted>(l).steps, 50u);
}

TEST(UniversalTest, InvalidDescriptionPropagates) {
  EXPECT_THROW(universal_run(Description{"110"}, "", 10), InvalidEncoding);
  EXPECT_THROW(universal_run(encode(corpus_machine("flip")), "2", 10), Error);
}

TEST(UniversalTest, AgreesWithDirectRunOnCorpus) {
  for (const std::string& name : encodable_corpus_names()) {
    const Machine m = corpus_machine(name);
    const Description d = encode(m);
    for (const std::string& w : words_up_to("01", 3)) {
      const RunOutcome direct = run_bounded(m, w, 200);
      const RunOutcome universal = universal_run(d, w, 200);
      EXPECT_TRUE(same_outcome(direct, universal)) << name << " on '" << w << "'";
      if (const auto* b = std::get_if<BudgetExhausted>(&universal)) {
        const auto& c = std::get<BudgetExhausted>(direct).final_config;
        EXPECT_EQ(b->final_config.heads, c.heads);
        EXPECT_EQ(b->final_config.tapes, c.tapes);
      }
    }
  }
}

TEST(UniversalTest, StepwiseInterface) {
  UniversalSimulator u(encode(corpus_machine("countdown")), "11");
  EXPECT_EQ(u.state_count(), 2u);
  EXPECT_FALSE(u.halted());
  while (u.step()) {
  }
  EXPECT_TRUE(u.halted());
  EXPECT_EQ(u.steps(), 3u);
  EXPECT_FALSE(u.step());
  EXPECT_EQ(std::get<HaltedWithResult>(u.outcome()).result, "1");
}

}  // namespace
}  // namespace hypermachine
