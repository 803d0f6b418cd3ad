#include <string>

#include "doctest.h"
#include "minpair/dataio.hpp"
#include "minpair/error.hpp"
#include "minpair/hashing.hpp"
#include "minpair/text.hpp"
#include "test_util.hpp"

using namespace minpair;
using testutil::fixture;
using testutil::TempDir;

TEST_SUITE("dataio") {

TEST_CASE("tokenizer detaches final punctuation and lowercases") {
  CHECK(tokenize("The dog runs.") == std::vector<std::string>{"the", "dog", "runs", "."});
  CHECK(tokenize("the lie on the foot is flat .") ==
        std::vector<std::string>{"the", "lie", "on", "the", "foot", "is", "flat", "."});
  CHECK(tokenize("Who left?!") == std::vector<std::string>{"who", "left", "?!"});
  CHECK(tokenize("   ").empty());
}

TEST_CASE("blimp fixture loads every record") {
  Diagnostics diag;
  const auto pairs = load_blimp(fixture("blimp"), diag);
  REQUIRE(pairs.size() == 5);
  CHECK(pairs[0].paradigm == "only_npi_licensor_present");
  CHECK(pairs[0].phenomenon == "npi_licensing");
  CHECK(pairs[2].good.text() == "the dog runs .");
  CHECK(pairs[2].bad.text() == "the dog run .");
  for (const auto& p : pairs) CHECK(p.source == Source::BLiMP);
  // Both fixture files are short of the 1000 pairs a release paradigm has.
  REQUIRE(diag.warnings().size() == 2);
  CHECK(diag.warnings()[0].find("expected 1000") != std::string::npos);
}

TEST_CASE("single synthetic blimp record gives 3-token sentences") {
  TempDir dir;
  dir.write("x.jsonl",
            R"({"sentence_good":"the dog runs","sentence_bad":"the dog run","UID":"x","linguistics_term":"t"})"
            "\n");
  Diagnostics diag;
  const auto pairs = load_blimp(dir.path(), diag);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].good.tokens.size() == 3);
  CHECK(pairs[0].bad.tokens.size() == 3);
  CHECK(pairs[0].good.tokens != pairs[0].bad.tokens);
}

TEST_CASE("empty benchmark directory yields no pairs and a warning") {
  TempDir dir;
  Diagnostics diag;
  CHECK(load_blimp(dir.path(), diag).empty());
  CHECK(diag.warnings().size() == 1);
  diag.clear();
  CHECK(load_zorro(dir.path(), diag).empty());
  CHECK(diag.warnings().size() == 1);
}

TEST_CASE("blimp record missing a field is an ingest error") {
  TempDir dir;
  dir.write("x.jsonl", R"({"sentence_good":"a b","UID":"x"})" "\n");
  Diagnostics diag;
  CHECK_THROWS_AS(load_blimp(dir.path(), diag), IngestError);
}

TEST_CASE("zorro layout and paradigm key") {
  Diagnostics diag;
  const auto pairs = load_zorro(fixture("zorro"), diag);
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0].paradigm == "agreement_subject_verb-across_prepositional_phrase");
  CHECK(pairs[0].phenomenon == "agreement_subject_verb");
  CHECK(pairs[0].good.text() == "the lie on the foot is flat .");
  CHECK(pairs[0].bad.text() == "the lie on the foot are flat .");
  CHECK(pairs[2].paradigm == "ellipsis-n_bar");

  const auto swapped = load_zorro(fixture("zorro"), diag, ZorroLayout::GoodFirst);
  CHECK(swapped[0].good.text() == pairs[0].bad.text());
}

TEST_CASE("zorro file with an odd line count is rejected") {
  TempDir dir;
  dir.write("a-b.txt", "one two .\none three .\none four .\n");
  Diagnostics diag;
  try {
    load_zorro(dir.path(), diag);
    FAIL("expected an ingest error");
  } catch (const IngestError& e) {
    CHECK(std::string(e.what()).find("unpaired sentence") != std::string::npos);
  }
}

TEST_CASE("li-adger fixture: types, z-scores and pairs") {
  Diagnostics diag;
  const auto types = load_li_adger(fixture("li_adger"), diag);
  REQUIRE(types.size() == 4);
  CHECK(types[0].type_id == "32.3.Culicover.7a.g");
  CHECK(types[0].phenomenon == "32.3.Culicover.7");
  CHECK(types[0].condition == Condition::Grammatical);
  CHECK(types[0].sentences.size() == 8);
  CHECK(types[0].human_z[0] == 1.453262);
  CHECK(types[0].sentences[0].raw == "John tried to win.");
  CHECK(types[2].phenomenon == "ch8.seem");

  const auto pairs = build_li_adger_pairs(types, diag);
  REQUIRE(pairs.size() == 16);
  CHECK(pairs[0].good.text() == "john tried to win .");
  CHECK(pairs[0].bad.text() == "john tried himself to win .");
  CHECK(pairs[0].source == Source::LIAdger);
  CHECK(diag.empty());
}

TEST_CASE("li-adger sentence id parsing") {
  const auto a = parse_li_adger_id("32.3.Culicover.7a.g.01");
  CHECK(a.type_id == "32.3.Culicover.7a.g");
  CHECK(a.condition == Condition::Grammatical);
  CHECK(a.lex_index == 1);
  CHECK(a.phenomenon == "32.3.Culicover.7");
  const auto b = parse_li_adger_id("ch8.150.*.01");
  CHECK(b.condition == Condition::Star);
  CHECK(b.phenomenon == "ch8.150");
  CHECK_THROWS_AS(parse_li_adger_id("ch8.150.x.01"), IngestError);
  CHECK_THROWS_AS(parse_li_adger_id("ch8.150.g.xx"), IngestError);
}

TEST_CASE("li-adger type with 7 rows is rejected") {
  TempDir dir;
  std::string body;
  for (int i = 1; i <= 7; ++i) body += "1.1a.g.0" + std::to_string(i) + "\tA b.\t0.5\n";
  dir.write("t.tsv", body);
  Diagnostics diag;
  CHECK_THROWS_AS(load_li_adger(dir.path(), diag), IngestError);
}

TEST_CASE("li-adger duplicate pairs are dropped") {
  TempDir dir;
  std::string body;
  // Two starred types with identical text pair with the one grammatical type
  // to the same sentence pairs.
  for (int i = 1; i <= 8; ++i) {
    const auto n = std::to_string(i);
    body += "9.1a.g.0" + n + "\tA" + n + " left.\t1\n";
    body += "9.1b.*.0" + n + "\tA" + n + " left left.\t-1\n";
    body += "9.1c.*.0" + n + "\tA" + n + " left left.\t-1\n";
  }
  dir.write("t.tsv", body);
  Diagnostics diag;
  const auto types = load_li_adger(dir.path(), diag);
  CHECK(types.size() == 3);
  CHECK(build_li_adger_pairs(types, diag).size() == 8);
}

TEST_CASE("phenomenon with only grammatical conditions yields no pairs") {
  TempDir dir;
  std::string body;
  for (int i = 1; i <= 8; ++i) body += "5.5a.g.0" + std::to_string(i) + "\tX y.\t0.1\n";
  dir.write("t.tsv", body);
  Diagnostics diag;
  const auto types = load_li_adger(dir.path(), diag);
  CHECK(build_li_adger_pairs(types, diag).empty());
  CHECK(diag.warnings().size() == 1);
}

TEST_CASE("training corpus counts") {
  TempDir dir;
  const auto p = dir.write("c.txt", "a b\nc\n");
  Diagnostics diag;
  const auto c = load_training_corpus(p, CorpusFormat::Plain, diag);
  CHECK(c.sentence_count() == 2);
  CHECK(c.token_count() == 3);
  CHECK(diag.empty());

  const auto e = load_training_corpus(dir.write("e.txt", ""), CorpusFormat::Plain, diag);
  CHECK(e.token_count() == 0);
  CHECK(diag.warnings().size() == 1);
  std::size_t lines = 0;
  e.for_each([&](const TrainingCorpus::Line&) { ++lines; });
  CHECK(lines == 0);
}

TEST_CASE("tagged corpus lines split at the last underscore") {
  const auto line = parse_tagged_line("new_york_NNP is_VBZ");
  CHECK(line.tokens == std::vector<std::string>{"new_york", "is"});
  CHECK(line.tags == std::vector<std::string>{"NNP", "VBZ"});
  CHECK_THROWS_AS(parse_tagged_line("bare"), SchemaError);
}

TEST_CASE("pair and sentence files round-trip") {
  Diagnostics diag;
  const auto pairs = load_zorro(fixture("zorro"), diag);
  TempDir dir;
  write_pairs_tsv(dir / "p.tsv", pairs);
  const auto back = read_pairs_tsv(dir / "p.tsv");
  REQUIRE(back.size() == pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(back[i].id == pairs[i].id);
    CHECK(back[i].paradigm == pairs[i].paradigm);
    CHECK(back[i].good.tokens == pairs[i].good.tokens);
    CHECK(back[i].bad.id == pairs[i].bad.id);
  }
  CHECK(pairs_tsv(back) == pairs_tsv(pairs));
  CHECK(read_file(dir / "p.tsv").rfind("pair_id\tsource\tphenomenon\tparadigm\tgood_sentence\tbad_sentence", 0) == 0);

  const auto sents = collect_sentences(pairs);
  CHECK(sents.size() == 6);
  write_sentences_tsv(dir / "s.tsv", sents);
  const auto sback = read_sentences_tsv(dir / "s.tsv");
  REQUIRE(sback.size() == 6);
  CHECK(sback[1].id == sents[1].id);
  CHECK(sback[1].tokens == sents[1].tokens);
}

TEST_CASE("malformed pair file is a schema error") {
  TempDir dir;
  CHECK_THROWS_AS(read_pairs_tsv(dir.write("p.tsv", "nope\n")), SchemaError);
  CHECK_THROWS_AS(read_pairs_tsv(dir / "missing.tsv"), IoError);
}

TEST_CASE("dataset hash pins contents and layout") {
  TempDir a, b;
  a.write("x/1.txt", "hello");
  b.write("x/1.txt", "hello");
  CHECK(hash_dataset(a.path()) == hash_dataset(b.path()));
  b.write("x/2.txt", "");
  CHECK(hash_dataset(a.path()) != hash_dataset(b.path()));
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

}  // TEST_SUITE
