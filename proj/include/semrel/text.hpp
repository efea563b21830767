#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace semrel {

struct Document;

using StopWords = std::unordered_set<std::string>;

/// The 318-word English stop list used by the count vectorizer.
const StopWords& english_stop_words();

StopWords load_stop_words(const std::filesystem::path& path);

/// Lowercased tokens made of two or more word characters (ASCII letters,
/// digits, underscore, or any non-ASCII UTF-8 byte), with stop words removed.
std::map<std::string, std::size_t> tokenize_counts(std::string_view text,
                                                   const StopWords& stop_words);
std::map<std::string, std::size_t> tokenize_counts(const Document& doc,
                                                   const StopWords& stop_words);

/// Alphabetic runs (no digits) of 2..15 characters, lowercased, in order.
/// This is the document tokenizer used for paragraph-vector training.
std::vector<std::string> simple_preprocess(std::string_view text);

}  // namespace semrel
