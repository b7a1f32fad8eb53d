// Reference rows for the published fixed-point and bound tables, used as
// frozen expected values by the unit and acceptance suites.
#ifndef TESTS_REFERENCE_TABLES_HPP
#define TESTS_REFERENCE_TABLES_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace fixtures {

struct BaseValues {
  uint64_t base;
  std::vector<uint64_t> values;
};

// Standard fixed points by base.
inline const std::vector<BaseValues>& table1() {
  static const std::vector<BaseValues> t = {
      {2, {2, 6, 10}},
      {3, {10}},
      {4, {200}},
      {5, {6, 49000, 181500}},
      {6, {54}},
      {7, {100}},
      {8, {216}},
      {9, {4199040}},
      {10, {81312000}},
      {14, {47250}},
      {16, {18}},
      {17, {36}},
      {19, {96}},
      {32, {256}},
      {51, {54}},
      {64, {65536}},
      {71, {216}},
      {158, {162}},
      {160, {324}},
      {323, {1296}},
      {481, {486}},
      {512, {4294967296ull}},
      {1452, {1458}},
      {1455, {2916}},
      {1942, {5832}},
      {4096, {65536}},
      {4367, {4374}},
      {7775, {46656}},
      {8294, {82944}},
      {13114, {13122}},
      {13118, {26244}},
      {26242, {104976}},
      {39357, {39366}},
      {52485, {157464}},
      {74649, {746496}},
      {118088, {118098}},
      {209951, {1679616}},
      {354283, {354294}},
      {1062870, {1062882}},
      {1119743, {10077696}},
  };
  return t;
}

struct DivisorRow {
  uint64_t a;
  std::vector<uint64_t> divisors;  // divisors of 2^a - a larger than a
};

inline const std::vector<DivisorRow>& table2() {
  static const std::vector<DivisorRow> t = {
      {3, {5}},
      {4, {6, 12}},
      {5, {9, 27}},
      {6, {29, 58}},
      {7, {11, 121}},
      {8, {31, 62, 124, 248}},
      {9, {503}},
      {10, {13, 26, 39, 78, 169, 338, 507, 1014}},
      {11, {21, 97, 291, 679, 2037}},
      {12, {1021, 2042, 4084}},
      {13, {8179}},
      {14, {1637, 3274, 8185, 16370}},
      {15, {4679, 32753}},
  };
  return t;
}

// Alpha fixed points by base.
inline const std::vector<BaseValues>& table3() {
  static const std::vector<BaseValues> t = {
      {12, {12, 24}},     {16, {48}},         {24, {96}},
      {35, {36}},         {64, {384}},        {106, {108}},
      {107, {216}},       {115, {576}},       {192, {1536}},
      {321, {324}},       {329, {2304}},      {431, {1296}},
      {968, {972}},       {970, {1944}},      {1943, {7776}},
      {2048, {24576}},    {2911, {2916}},     {8742, {8748}},
      {8745, {17496}},    {11662, {34992}},   {24576, {393216}},
      {26237, {26244}},   {46655, {279936}},  {78724, {78732}},
      {78728, {157464}},  {157462, {629856}}, {236187, {236196}},
      {314925, {944784}},
  };
  return t;
}

// k* for bases 2..16.
inline const std::vector<uint64_t>& table4() {
  static const std::vector<uint64_t> t = {0, 0,  3,  4,  5,  6,  7, 8,
                                          9, 10, 11, 12, 13, 14, 14};
  return t;
}

// Reverse fixed points by base.
inline const std::vector<BaseValues>& table5() {
  static const std::vector<BaseValues> t = {
      {3, {3, 10, 273}},  {5, {6, 175}},       {7, {100}},
      {9, {27}},          {10, {12}},          {17, {36}},
      {21, {24}},         {25, {3125}},        {44, {48}},
      {49, {823543}},     {70, {144}},         {71, {216}},
      {91, {96}},         {97, {486}},         {186, {192}},
      {194, {972}},       {285, {576}},        {323, {1296}},
      {377, {384}},       {574, {1728}},       {760, {768}},
      {1148, {2304}},     {1527, {1536}},      {2187, {19683}},
      {2499, {17496}},    {3062, {3072}},      {4603, {9216}},
      {4605, {13824}},    {5182, {20736}},     {6133, {6144}},
      {7775, {46656}},    {9997, {69984}},     {12276, {12288}},
      {12440, {62208}},   {18426, {36864}},    {24563, {24576}},
      {36860, {110592}},  {49138, {49152}},    {73721, {147456}},
      {98289, {98304}},   {209951, {1679616}}, {1119743, {10077696}},
  };
  return t;
}

// l* for bases 2..16.
inline const std::vector<uint64_t>& table6() {
  static const std::vector<uint64_t> t = {0,  2,  4,  5,  6,  7,  8, 9,
                                          10, 11, 12, 12, 13, 14, 15};
  return t;
}

// Generalized fixed points under identity maps (1 omitted, as printed).
inline const std::vector<BaseValues>& table7_gmn() {
  static const std::vector<BaseValues> t = {
      {2, {1350}}, {4, {108}},  {5, {8}},     {6, {16}},  {7, {72}},
      {10, {324}}, {12, {1458}}, {23, {1728}}, {29, {64}},
  };
  return t;
}

inline const std::vector<BaseValues>& table7_grmn() {
  static const std::vector<BaseValues> t = {
      {2, {2, 6, 12}}, {3, {120, 360}}, {4, {54}},         {5, {48}},
      {6, {32}},       {7, {768}},      {8, {216, 1728}},  {10, {64}},
      {11, {192, 729, 1536}},
  };
  return t;
}

// First primes p_{r+1} with r | p_{r+1} - 1.
inline const std::vector<uint64_t>& rmn_prime_prefix() {
  static const std::vector<uint64_t> t = {3, 5, 7, 31, 97, 101, 331};
  return t;
}

}  // namespace fixtures

#endif  // TESTS_REFERENCE_TABLES_HPP
