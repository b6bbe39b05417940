#pragma once

#include <array>
#include <string_view>

namespace kwgraph {

// Bundled fallback stop list: common English function words plus the
// single-letter fragments that tokenization leaves behind from contractions
// ("don't" -> "don", "t"). Supply a stop-word file to replace it.
inline constexpr auto kDefaultStopWords = std::to_array<std::string_view>({
    "a",          "about",      "above",     "across",     "after",
    "again",      "against",    "ain",       "all",        "almost",
    "alone",      "along",      "already",   "also",       "although",
    "always",     "am",         "among",     "amongst",    "an",
    "and",        "another",    "any",       "anyone",     "anything",
    "anywhere",   "are",        "aren",      "around",     "as",
    "at",         "away",       "be",        "became",     "because",
    "become",     "becomes",    "becoming",  "been",       "before",
    "beforehand", "behind",     "being",     "below",      "beside",
    "besides",    "between",    "beyond",    "both",       "but",
    "by",         "can",        "cannot",    "could",      "couldn",
    "d",          "did",        "didn",      "do",         "does",
    "doesn",      "doing",      "don",       "done",       "down",
    "during",     "each",       "either",    "else",       "elsewhere",
    "enough",     "etc",        "even",      "ever",       "every",
    "everyone",   "everything", "everywhere", "except",    "few",
    "first",      "for",        "former",    "formerly",   "from",
    "further",    "furthermore", "get",      "gets",       "give",
    "given",      "gives",      "go",        "goes",       "had",
    "hadn",       "has",        "hasn",      "have",       "haven",
    "having",     "he",         "hence",     "her",        "here",
    "hereafter",  "hereby",     "herein",    "hereupon",   "hers",
    "herself",    "him",        "himself",   "his",        "how",
    "however",    "i",          "if",        "in",         "indeed",
    "instead",    "into",       "is",        "isn",        "it",
    "its",        "itself",     "just",      "last",       "latter",
    "latterly",   "least",      "less",      "ll",         "m",
    "ma",         "made",       "make",      "makes",      "many",
    "may",        "maybe",      "me",        "meanwhile",  "might",
    "mightn",     "more",       "moreover",  "most",       "mostly",
    "much",       "must",       "mustn",     "my",         "myself",
    "namely",     "needn",      "neither",   "never",      "nevertheless",
    "next",       "no",         "nobody",    "none",       "nonetheless",
    "nor",        "not",        "nothing",   "now",        "nowhere",
    "o",          "of",         "off",       "often",      "on",
    "once",       "one",        "only",      "onto",       "or",
    "other",      "others",     "otherwise", "ought",      "our",
    "ours",       "ourselves",  "out",       "over",       "own",
    "per",        "perhaps",    "please",    "quite",      "rather",
    "re",         "really",     "s",         "said",       "same",
    "say",        "says",       "seem",      "seemed",     "seeming",
    "seems",      "several",    "shall",     "shan",       "she",
    "should",     "shouldn",    "since",     "so",         "some",
    "somehow",    "someone",    "something", "sometime",   "sometimes",
    "somewhat",   "somewhere",  "still",     "such",       "t",
    "than",       "that",       "the",       "their",      "theirs",
    "them",       "themselves", "then",      "thence",     "there",
    "thereafter", "thereby",    "therefore", "therein",    "thereupon",
    "these",      "they",       "this",      "those",      "though",
    "through",    "throughout", "thus",      "to",         "together",
    "too",        "toward",     "towards",   "twice",      "under",
    "unless",     "unlike",     "unlikely",  "until",      "up",
    "upon",       "us",         "use",       "used",       "uses",
    "using",      "ve",         "very",      "via",        "was",
    "wasn",       "we",         "well",      "were",       "weren",
    "what",       "whatever",   "when",      "whence",     "whenever",
    "where",      "whereafter", "whereas",   "whereby",    "wherein",
    "whereupon",  "wherever",   "whether",   "which",      "while",
    "whither",    "who",        "whoever",   "whole",      "whom",
    "whose",      "why",        "will",      "with",       "within",
    "without",    "won",        "would",     "wouldn",     "y",
    "yet",        "you",        "your",      "yours",      "yourself",
    "yourselves",
});

}  // namespace kwgraph
