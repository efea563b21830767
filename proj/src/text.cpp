#include "semrel/text.hpp"

#include <fstream>

#include "semrel/dataset.hpp"
#include "semrel/errors.hpp"

namespace semrel {
namespace {

// Same list as data/english_stopwords.txt.
constexpr const char* kEnglishStopWords[] = {
    "a", "about", "above", "across", "after", "afterwards", "again", "against", "all",
    "almost", "alone", "along", "already", "also", "although", "always", "am", "among",
    "amongst", "amoungst", "amount", "an", "and", "another", "any", "anyhow", "anyone",
    "anything", "anyway", "anywhere", "are", "around", "as", "at", "back", "be", "became",
    "because", "become", "becomes", "becoming", "been", "before", "beforehand", "behind",
    "being", "below", "beside", "besides", "between", "beyond", "bill", "both", "bottom",
    "but", "by", "call", "can", "cannot", "cant", "co", "con", "could", "couldnt", "cry", "de",
    "describe", "detail", "do", "done", "down", "due", "during", "each", "eg", "eight",
    "either", "eleven", "else", "elsewhere", "empty", "enough", "etc", "even", "ever", "every",
    "everyone", "everything", "everywhere", "except", "few", "fifteen", "fifty", "fill",
    "find", "fire", "first", "five", "for", "former", "formerly", "forty", "found", "four",
    "from", "front", "full", "further", "get", "give", "go", "had", "has", "hasnt", "have",
    "he", "hence", "her", "here", "hereafter", "hereby", "herein", "hereupon", "hers",
    "herself", "him", "himself", "his", "how", "however", "hundred", "i", "ie", "if", "in",
    "inc", "indeed", "interest", "into", "is", "it", "its", "itself", "keep", "last", "latter",
    "latterly", "least", "less", "ltd", "made", "many", "may", "me", "meanwhile", "might",
    "mill", "mine", "more", "moreover", "most", "mostly", "move", "much", "must", "my",
    "myself", "name", "namely", "neither", "never", "nevertheless", "next", "nine", "no",
    "nobody", "none", "noone", "nor", "not", "nothing", "now", "nowhere", "of", "off", "often",
    "on", "once", "one", "only", "onto", "or", "other", "others", "otherwise", "our", "ours",
    "ourselves", "out", "over", "own", "part", "per", "perhaps", "please", "put", "rather",
    "re", "same", "see", "seem", "seemed", "seeming", "seems", "serious", "several", "she",
    "should", "show", "side", "since", "sincere", "six", "sixty", "so", "some", "somehow",
    "someone", "something", "sometime", "sometimes", "somewhere", "still", "such", "system",
    "take", "ten", "than", "that", "the", "their", "them", "themselves", "then", "thence",
    "there", "thereafter", "thereby", "therefore", "therein", "thereupon", "these", "they",
    "thick", "thin", "third", "this", "those", "though", "three", "through", "throughout",
    "thru", "thus", "to", "together", "too", "top", "toward", "towards", "twelve", "twenty",
    "two", "un", "under", "until", "up", "upon", "us", "very", "via", "was", "we", "well",
    "were", "what", "whatever", "when", "whence", "whenever", "where", "whereafter", "whereas",
    "whereby", "wherein", "whereupon", "wherever", "whether", "which", "while", "whither",
    "who", "whoever", "whole", "whom", "whose", "why", "will", "with", "within", "without",
    "would", "yet", "you", "your", "yours", "yourself", "yourselves",
};

bool is_word_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c >= 0x80;
}

bool is_alpha_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? char(c - 'A' + 'a') : c; }

// UTF-8 code points in a byte run (continuation bytes are not counted).
std::size_t code_points(std::string_view s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
}

template <typename Pred, typename Fn>
void for_each_run(std::string_view text, Pred in_run, Fn fn) {
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !in_run(static_cast<unsigned char>(text[i]))) ++i;
        const std::size_t start = i;
        while (i < text.size() && in_run(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) fn(text.substr(start, i - start));
    }
}

std::string lowered(std::string_view s) {
    std::string out(s);
    for (auto& c : out) c = ascii_lower(c);
    return out;
}

}  // namespace

const StopWords& english_stop_words() {
    static const StopWords words(std::begin(kEnglishStopWords), std::end(kEnglishStopWords));
    return words;
}

StopWords load_stop_words(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stop word file " + path.string());
    StopWords words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) words.insert(lowered(line));
    }
    return words;
}

std::map<std::string, std::size_t> tokenize_counts(std::string_view text,
                                                   const StopWords& stop_words) {
    std::map<std::string, std::size_t> counts;
    for_each_run(text, is_word_byte, [&](std::string_view run) {
        if (code_points(run) < 2) return;
        auto token = lowered(run);
        if (stop_words.contains(token)) return;
        ++counts[std::move(token)];
    });
    return counts;
}

std::map<std::string, std::size_t> tokenize_counts(const Document& doc,
                                                   const StopWords& stop_words) {
    return tokenize_counts(doc.text, stop_words);
}

std::vector<std::string> simple_preprocess(std::string_view text) {
    std::vector<std::string> tokens;
    for_each_run(text, is_alpha_byte, [&](std::string_view run) {
        const auto n = code_points(run);
        if (n < 2 || n > 15 || run.front() == '_') return;
        tokens.push_back(lowered(run));
    });
    return tokens;
}

}  // namespace semrel
