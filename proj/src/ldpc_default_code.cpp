// Generated by cfmimo_make_code; do not edit by hand.
// Matches data/ldpc_256_128.alist and build_code(256, 128, 7).
#include <sstream>

#include "cfmimo/ldpc.hpp"

namespace cfmimo {

namespace {

constexpr std::uint64_t kDefaultSeed = 7;

const char* const kDefaultAlist = R"ALIST(256 128
3 7
3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3 3
6 6 5 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 5 6 6 6 7 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 7 5 6 6 6 6 6 6 6 6 6 6 6 6 6 6 6 7 6 6 6 6 6 6 6 5 6 6 6 6 6 6 7 6 6 6 6 6 7 6 6 6 6 5 6 6 6 6 6 6 6 6 6 6
50 74 121
7 63 99
3 8 27
49 55 89
4 23 39
81 94 106
57 87 92
33 105 127
22 86 119
69 70 108
53 83 111
102 107 114
30 60 68
47 64 124
20 48 73
40 45 88
43 90 117
13 72 77
58 98 110
9 109 115
18 24 75
59 118 128
80 82 125
21 85 97
41 51 100
54 62 65
19 28 96
15 71 123
11 52 76
2 44 116
6 10 12
79 84 126
14 67 101
5 56 103
36 78 113
16 35 95
31 34 61
32 91 122
1 25 29
37 42 46
38 93 104
26 66 120
17 81 112
17 28 43
53 62 123
29 82 98
1 18 96
48 59 76
31 105 128
73 97 106
85 107 109
21 101 108
10 46 114
19 47 65
71 91 92
16 75 88
26 38 117
2 78 127
22 39 94
14 72 100
56 118 126
27 60 66
7 36 89
51 74 87
15 42 55
63 86 125
50 95 103
13 44 68
93 102 121
12 58 61
4 34 83
45 49 52
69 113 124
9 24 30
77 90 110
3 64 84
8 32 119
5 70 80
35 111 120
11 104 116
40 67 122
37 79 112
23 25 41
6 20 57
54 99 115
29 33 122
10 65 67
24 87 113
4 5 68
8 48 102
37 51 66
60 71 106
64 98 104
16 42 82
2 35 85
25 49 107
86 116 123
43 105 114
9 14 84
77 89 94
50 52 54
3 34 88
13 19 59
70 81 115
17 32 95
20 53 90
18 38 97
7 27 96
11 39 46
108 110 118
91 125 126
38 55 56
23 47 63
12 99 120
31 74 86
6 69 119
26 40 128
22 28 45
15 101 121
19 83 92
21 36 79
58 76 78
93 100 127
1 6 103
61 112 124
41 62 75
72 73 95
30 33 111
44 57 112
82 109 117
52 80 100
64 94 128
73 113 125
32 62 68
55 111 119
14 28 120
67 78 81
11 75 108
12 13 121
10 18 126
50 60 98
16 36 102
17 34 104
15 47 66
25 84 106
9 58 123
29 69 93
2 27 56
53 80 128
70 74 96
54 117 124
3 23 87
41 56 61
7 20 122
33 37 77
22 83 97
1 34 101
46 92 115
5 43 116
26 57 72
65 71 89
8 49 110
4 45 127
40 79 107
35 59 91
44 51 88
31 65 85
21 30 48
63 76 114
75 105 109
24 90 99
39 118 121
42 68 97
47 103 111
12 96 106
13 40 103
10 36 123
2 23 101
27 81 111
20 39 54
24 42 91
66 116 122
19 73 105
38 63 71
17 51 118
60 83 114
8 28 115
1 37 76
18 53 107
77 102 120
7 93 110
15 32 61
22 57 98
3 6 109
55 62 92
25 78 104
9 35 124
46 50 89
48 80 87
44 64 70
41 82 99
4 69 126
45 90 125
16 30 52
26 58 119
14 71 88
11 72 79
29 59 86
85 100 112
31 49 95
43 74 84
94 101 117
33 54 108
21 26 127
5 67 92
37 43 113
47 57 126
6 15 104
49 120 123
45 70 72
11 12 53
38 39 80
4 9 77
25 46 48
62 96 125
50 59 79
21 56 122
58 87 107
19 51 117
24 27 86
28 68 78
2 10 30
95 108 114
91 94 127
13 16 119
7 42 103
55 60 112
29 73 89
5 22 102
32 36 106
1 35 105
17 40 63
65 110 113
18 82 116
20 84 85
64 67 75
83 93 109
14 69 90
23 52 97
31 81 98
88 115 121
34 99 107
8 74 124
33 61 92
48 66 75
41 113 128
39 47 124 157 188 241 0
30 58 95 148 178 232 0
3 76 102 152 194 0 0
5 71 89 163 202 223 0
34 78 89 159 215 239 0
31 84 116 124 194 218 0
2 63 108 154 191 236 0
3 77 90 162 187 253 0
20 74 99 146 197 223 0
31 53 87 140 177 232 0
29 80 109 138 207 221 0
31 70 114 139 175 221 0
18 68 103 139 176 235 0
33 60 99 136 206 248 0
28 65 119 144 192 218 0
36 56 94 142 204 235 0
43 44 105 143 185 242 0
21 47 107 140 189 244 0
27 54 103 120 183 229 0
15 84 106 154 180 245 0
24 52 121 168 214 227 0
9 59 118 156 193 239 0
5 83 113 152 178 249 0
21 74 88 171 181 230 0
39 83 96 145 196 224 0
42 57 117 160 205 214 0
3 62 108 148 179 230 0
27 44 118 136 187 231 0
39 46 86 147 208 238 0
13 74 128 168 204 232 0
37 49 115 167 210 250 0
38 77 105 134 192 240 0
8 86 128 155 213 254 0
37 71 102 143 157 252 0
36 79 95 165 197 241 0
35 63 121 142 177 240 0
40 82 91 155 188 216 0
41 57 107 112 184 222 0
5 59 109 172 180 222 0
16 81 117 164 176 242 0
25 83 126 153 201 256 0
40 65 94 173 181 236 0
17 44 98 159 211 216 0
30 68 129 166 200 0 0
16 72 118 163 203 220 0
40 53 109 158 198 224 0
14 54 113 144 174 217 0
15 48 90 168 199 224 255
4 72 96 162 210 219 0
1 67 101 141 198 226 0
25 64 91 166 185 229 0
29 72 101 131 204 249 0
11 45 106 149 189 221 0
26 85 101 151 180 213 0
4 65 112 135 195 237 0
34 61 112 148 153 227 0
7 84 129 160 193 217 0
19 70 122 146 205 228 0
22 48 103 165 208 226 0
13 62 92 141 186 237 0
37 70 125 153 192 254 0
26 45 126 134 195 225 0
2 66 113 169 184 242 0
14 76 93 132 200 246 0
26 54 87 161 167 243 0
42 62 91 144 182 255 0
33 81 87 137 215 246 0
13 68 89 134 173 231 0
10 73 116 147 202 248 0
10 78 104 150 200 220 0
28 55 92 161 184 206 0
18 60 127 160 207 220 0
15 50 127 133 183 238 0
1 64 115 150 211 253 0
21 56 126 138 170 246 255
29 48 122 169 188 0 0
18 75 100 155 190 223 0
35 58 122 137 196 231 0
32 82 121 164 207 226 0
23 78 131 149 199 222 0
6 43 104 137 179 250 0
23 46 94 130 201 244 0
11 71 120 156 186 247 0
32 76 99 145 211 245 0
24 51 95 167 209 245 0
9 66 97 115 208 230 0
7 64 88 152 199 228 0
16 56 102 166 206 251 0
4 63 100 161 198 238 0
17 75 106 171 203 248 0
38 55 111 165 181 234 0
7 55 120 158 195 215 254
41 69 123 147 191 247 0
6 59 100 132 212 234 0
36 67 105 127 210 233 0
27 47 108 150 175 225 0
24 50 107 156 173 249 0
19 46 93 141 193 250 0
2 85 114 171 201 252 0
25 60 123 131 209 0 0
33 52 119 157 178 212 0
12 69 90 142 190 239 0
34 67 124 174 176 236 0
41 80 93 143 196 218 0
8 49 98 170 183 241 0
6 50 92 145 175 240 0
12 51 96 164 189 228 252
10 52 110 138 213 233 0
20 51 130 170 194 247 0
19 75 110 162 191 243 0
11 79 128 135 174 179 0
43 82 125 129 209 237 0
35 73 88 133 216 243 256
12 53 98 169 186 233 0
20 85 104 158 187 251 0
30 80 97 159 182 244 0
17 57 130 151 212 229 0
22 61 110 172 185 0 0
9 77 116 135 205 235 0
42 79 114 136 190 219 0
1 69 119 139 172 251 0
38 81 86 154 182 227 0
28 45 97 146 177 219 0
14 73 125 151 197 253 0
23 66 111 133 203 225 0
32 61 111 140 202 217 0
8 58 123 163 214 234 0
22 49 117 132 149 256 0
)ALIST";

}  // namespace

std::uint64_t default_code_seed() { return kDefaultSeed; }

const LdpcCode& default_code() {
  static const LdpcCode code = [] {
    std::istringstream ss(kDefaultAlist);
    LdpcCode c = read_alist(ss);
    c.seed_used = kDefaultSeed;
    return c;
  }();
  return code;
}

}  // namespace cfmimo
