#pragma once

// Generated by tools/embed_resources.py; edit the source files instead.

#include <string_view>

namespace fgdm::resources {

// engines/total_preference.json
inline constexpr std::string_view kTotalPreferenceEngine = R"FGDM({
  "variables": [
    {"name": "voting", "domain": [0, 100], "terms": [
      {"label": "VL", "shape": "tri", "points": [0, 0, 25]},
      {"label": "L", "shape": "tri", "points": [0, 25, 50]},
      {"label": "M", "shape": "tri", "points": [25, 50, 75]},
      {"label": "H", "shape": "tri", "points": [50, 75, 100]},
      {"label": "VH", "shape": "tri", "points": [75, 100, 100]}]},
    {"name": "sentiment", "domain": [-1, 1], "terms": [
      {"label": "L", "shape": "trap", "points": [-1, -1, -0.5, 0]},
      {"label": "M", "shape": "tri", "points": [-0.5, 0, 0.5]},
      {"label": "H", "shape": "trap", "points": [0, 0.5, 1, 1]}]},
    {"name": "total", "domain": [0, 10], "terms": [
      {"label": "L", "shape": "tri", "points": [0, 1, 6]},
      {"label": "M", "shape": "tri", "points": [0, 5, 10]},
      {"label": "H", "shape": "tri", "points": [4, 9, 10]}]}
  ],
  "rules": [
    {"if": {"voting": "VL", "sentiment": "L"}, "then": {"total": "L"}},
    {"if": {"voting": "L", "sentiment": "L"}, "then": {"total": "L"}},
    {"if": {"voting": "M", "sentiment": "L"}, "then": {"total": "M"}},
    {"if": {"voting": "H", "sentiment": "L"}, "then": {"total": "M"}},
    {"if": {"voting": "VH", "sentiment": "L"}, "then": {"total": "M"}},
    {"if": {"voting": "VL", "sentiment": "M"}, "then": {"total": "L"}},
    {"if": {"voting": "L", "sentiment": "M"}, "then": {"total": "L"}},
    {"if": {"voting": "M", "sentiment": "M"}, "then": {"total": "M"}},
    {"if": {"voting": "H", "sentiment": "M"}, "then": {"total": "H"}},
    {"if": {"voting": "VH", "sentiment": "M"}, "then": {"total": "H"}},
    {"if": {"voting": "VL", "sentiment": "H"}, "then": {"total": "L"}},
    {"if": {"voting": "L", "sentiment": "H"}, "then": {"total": "M"}},
    {"if": {"voting": "M", "sentiment": "H"}, "then": {"total": "H"}},
    {"if": {"voting": "H", "sentiment": "H"}, "then": {"total": "H"}},
    {"if": {"voting": "VH", "sentiment": "H"}, "then": {"total": "H"}}
  ],
  "operators": {"and": "product", "accumulate": "sum", "implication": "min"},
  "defuzzifier": "centroid",
  "resolution": 2001
}
)FGDM";

// engines/total_preference_classic.json
inline constexpr std::string_view kTotalPreferenceClassicEngine = R"FGDM({
  "variables": [
    {
      "name": "voting",
      "domain": [
        0,
        100
      ],
      "terms": [
        {
          "label": "VL",
          "shape": "tri",
          "points": [
            0,
            0,
            25
          ]
        },
        {
          "label": "L",
          "shape": "tri",
          "points": [
            0,
            25,
            50
          ]
        },
        {
          "label": "M",
          "shape": "tri",
          "points": [
            25,
            50,
            75
          ]
        },
        {
          "label": "H",
          "shape": "tri",
          "points": [
            50,
            75,
            100
          ]
        },
        {
          "label": "VH",
          "shape": "tri",
          "points": [
            75,
            100,
            100
          ]
        }
      ]
    },
    {
      "name": "sentiment",
      "domain": [
        -1,
        1
      ],
      "terms": [
        {
          "label": "L",
          "shape": "trap",
          "points": [
            -1,
            -1,
            -0.5,
            0
          ]
        },
        {
          "label": "M",
          "shape": "tri",
          "points": [
            -0.5,
            0,
            0.5
          ]
        },
        {
          "label": "H",
          "shape": "trap",
          "points": [
            0,
            0.5,
            1,
            1
          ]
        }
      ]
    },
    {
      "name": "total",
      "domain": [
        0,
        10
      ],
      "terms": [
        {
          "label": "L",
          "shape": "tri",
          "points": [
            0,
            0,
            5
          ]
        },
        {
          "label": "M",
          "shape": "tri",
          "points": [
            0,
            5,
            10
          ]
        },
        {
          "label": "H",
          "shape": "tri",
          "points": [
            5,
            10,
            10
          ]
        }
      ]
    }
  ],
  "rules": [
    {
      "if": {
        "voting": "VL",
        "sentiment": "L"
      },
      "then": {
        "total": "L"
      }
    },
    {
      "if": {
        "voting": "L",
        "sentiment": "L"
      },
      "then": {
        "total": "L"
      }
    },
    {
      "if": {
        "voting": "M",
        "sentiment": "L"
      },
      "then": {
        "total": "M"
      }
    },
    {
      "if": {
        "voting": "H",
        "sentiment": "L"
      },
      "then": {
        "total": "M"
      }
    },
    {
      "if": {
        "voting": "VH",
        "sentiment": "L"
      },
      "then": {
        "total": "M"
      }
    },
    {
      "if": {
        "voting": "VL",
        "sentiment": "M"
      },
      "then": {
        "total": "L"
      }
    },
    {
      "if": {
        "voting": "L",
        "sentiment": "M"
      },
      "then": {
        "total": "L"
      }
    },
    {
      "if": {
        "voting": "M",
        "sentiment": "M"
      },
      "then": {
        "total": "M"
      }
    },
    {
      "if": {
        "voting": "H",
        "sentiment": "M"
      },
      "then": {
        "total": "H"
      }
    },
    {
      "if": {
        "voting": "VH",
        "sentiment": "M"
      },
      "then": {
        "total": "H"
      }
    },
    {
      "if": {
        "voting": "VL",
        "sentiment": "H"
      },
      "then": {
        "total": "L"
      }
    },
    {
      "if": {
        "voting": "L",
        "sentiment": "H"
      },
      "then": {
        "total": "M"
      }
    },
    {
      "if": {
        "voting": "M",
        "sentiment": "H"
      },
      "then": {
        "total": "H"
      }
    },
    {
      "if": {
        "voting": "H",
        "sentiment": "H"
      },
      "then": {
        "total": "H"
      }
    },
    {
      "if": {
        "voting": "VH",
        "sentiment": "H"
      },
      "then": {
        "total": "H"
      }
    }
  ],
  "operators": {
    "and": "min",
    "accumulate": "max",
    "implication": "min"
  },
  "defuzzifier": "centroid",
  "resolution": 2001
}
)FGDM";

// engines/feedback.json
inline constexpr std::string_view kFeedbackEngine = R"FGDM({
  "variables": [
    {"name": "agreement", "domain": [0, 10], "terms": [
      {"label": "L", "shape": "trap", "points": [0, 0, 1, 5]},
      {"label": "M", "shape": "tri", "points": [1, 5, 9]},
      {"label": "H", "shape": "trap", "points": [5, 9, 10, 10]}]},
    {"name": "confidence", "domain": [0, 10], "terms": [
      {"label": "L", "shape": "trap", "points": [0, 0, 1, 5]},
      {"label": "M", "shape": "tri", "points": [1, 5, 9]},
      {"label": "H", "shape": "trap", "points": [5, 9, 10, 10]}]},
    {"name": "feedback", "domain": [0, 10], "terms": [
      {"label": "L", "shape": "tri", "points": [0, 0, 5]},
      {"label": "M", "shape": "tri", "points": [0, 5, 10]},
      {"label": "H", "shape": "tri", "points": [5, 10, 10]}]}
  ],
  "rules": [
    {"if": {"agreement": "L", "confidence": "L"}, "then": {"feedback": "L"}},
    {"if": {"agreement": "L", "confidence": "M"}, "then": {"feedback": "L"}},
    {"if": {"agreement": "M", "confidence": "L"}, "then": {"feedback": "L"}},
    {"if": {"agreement": "M", "confidence": "M"}, "then": {"feedback": "M"}},
    {"if": {"agreement": "L", "confidence": "H"}, "then": {"feedback": "M"}},
    {"if": {"agreement": "H", "confidence": "L"}, "then": {"feedback": "M"}},
    {"if": {"agreement": "M", "confidence": "H"}, "then": {"feedback": "H"}},
    {"if": {"agreement": "H", "confidence": "M"}, "then": {"feedback": "H"}},
    {"if": {"agreement": "H", "confidence": "H"}, "then": {"feedback": "H"}}
  ],
  "operators": {"and": "product", "accumulate": "sum", "implication": "min"},
  "defuzzifier": "centroid",
  "resolution": 2001
}
)FGDM";

// data/sentiment_lexicon.tsv
inline constexpr std::string_view kSentimentLexicon = R"FGDM(# token<TAB>valence, valence on a -4..4 scale
absurd	-1.3
admire	2.1
advantage	1.0
affordable	1.4
afraid	-2.2
agree	1.5
agreed	1.1
amazing	2.8
angry	-2.3
annoyed	-1.6
annoying	-1.7
anxious	-1.0
appealing	2.3
attentive	1.5
attractive	1.9
average	-0.3
awesome	3.1
awful	-2.0
awkward	-0.6
bad	-2.5
bargain	1.4
beautiful	2.9
benefit	2.0
best	3.2
better	1.9
bland	-0.6
bonus	2.3
bored	-1.1
boring	-1.3
brilliant	2.8
broken	-1.9
bugs	-1.1
calm	1.3
calming	1.8
care	2.2
certain	1.1
charming	2.4
cheap	0.6
cheaply	-0.8
clean	1.7
clearly	1.0
cockroach	-1.6
cold	-0.3
comfort	1.5
comfortable	1.5
comfy	1.8
complain	-1.5
complaint	-1.2
complicated	-0.6
concern	-0.6
concerned	-0.4
cons	-1.0
convenience	1.1
convenient	1.5
cool	1.3
costly	-0.8
cozy	1.9
cramped	-1.4
crap	-1.6
crazy	-1.4
crowded	-1.3
cry	-2.1
danger	-2.4
dangerous	-2.1
deal	0.7
decent	0.8
definitely	1.7
delay	-1.3
delicious	2.7
delighted	2.4
depressing	-1.6
difficult	-1.5
dirty	-1.9
disappointed	-1.9
disappointing	-2.2
disappointment	-2.3
disaster	-3.1
disgusting	-2.4
dislike	-1.6
disliked	-1.7
doubt	-1.5
doubtful	-1.4
dream	1.0
dull	-1.7
easy	1.9
elegant	2.1
enjoy	2.2
enjoyed	2.3
excellent	2.7
excited	1.4
exciting	2.2
exhausting	-1.5
expensive	-1.1
expensively	-1.0
fabulous	2.4
fail	-2.5
failed	-2.3
failure	-2.3
fair	1.3
fantastic	2.6
fantasy	1.4
far	-0.1
fascinating	2.6
favorite	2.0
favourite	2.0
fear	-2.2
filthy	-2.6
fine	0.8
free	2.3
fresh	1.3
friendly	2.2
fun	2.3
furious	-2.7
generous	2.3
glad	2.0
gladly	1.8
good	1.9
gorgeous	3.0
grateful	2.0
great	3.1
gross	-2.1
happy	2.7
hard	-0.4
hate	-2.7
hated	-3.2
heavenly	2.8
helpful	1.8
helpfully	1.7
hope	1.9
hopefully	1.7
hopeless	-2.0
horrible	-2.5
horrific	-3.4
hostile	-2.2
hot	-0.1
hurt	-2.4
ideal	2.2
ill	-1.8
impressive	2.3
inconvenient	-1.4
incredible	2.3
insecure	-1.5
interested	1.7
interesting	1.7
isolated	-1.0
issue	-0.4
issues	-0.4
joy	2.8
kind	2.4
lack	-1.3
lacking	-1.1
lame	-1.8
late	-0.5
laugh	2.6
like	1.5
liked	1.8
lively	1.5
lonely	-1.5
lose	-1.8
loss	-1.3
lost	-1.3
loud	-0.3
love	3.2
loved	2.9
lovely	2.8
luxurious	2.0
luxury	1.9
mad	-2.2
magnificent	2.9
mediocre	-1.0
meh	-0.3
mess	-1.5
messy	-1.5
minus	-0.5
miserable	-2.2
missing	-1.2
mistake	-1.4
modern	1.0
mold	-1.2
nasty	-2.6
nervous	-1.1
nice	1.8
nightmare	-2.5
no	-1.2
noise	-0.9
noisy	-1.1
nope	-0.5
ok	0.9
okay	0.9
old	-0.4
outdated	-1.2
outstanding	3.0
overpriced	-1.7
pain	-2.3
painful	-1.9
panic	-2.3
paradise	3.2
peaceful	2.2
perfect	2.7
pleasant	2.3
pleased	1.9
plus	1.2
pointless	-1.6
polite	1.7
poor	-2.1
positive	2.6
pretty	2.2
pricey	-0.8
problem	-1.7
problems	-1.7
pros	1.0
proud	2.1
quiet	1.0
reasonable	1.2
recommend	1.5
recommended	1.6
refreshing	2.1
regret	-1.9
relax	1.9
relaxing	2.1
reliable	1.8
remarkable	2.0
remote	-0.1
ridiculous	-1.5
risk	-1.1
risky	-1.4
romantic	2.2
rude	-2.0
ruin	-2.8
ruined	-2.4
sad	-2.1
sadly	-1.9
safe	1.9
satisfied	1.8
satisfying	2.0
scared	-1.9
scary	-2.2
secure	1.4
shabby	-1.2
shock	-1.6
shocked	-1.3
sick	-2.3
slow	-1.0
small	-0.3
smelly	-1.4
smile	1.5
smooth	1.2
solid	0.8
sorry	-0.3
spacious	1.6
splendid	2.6
spotless	2.0
stinky	-1.5
strange	-0.8
stress	-1.8
stressful	-2.3
strong	2.3
stunning	2.9
stylish	1.8
success	2.7
successful	2.8
sucks	-1.5
sunny	1.9
super	2.9
superb	3.1
sure	1.3
suspicious	-1.5
sweet	2.0
tasty	1.8
terrible	-2.1
terrific	2.1
terrified	-3.0
thank	1.5
thanks	1.9
thrilled	1.9
tidy	1.1
tiny	-0.4
tired	-1.9
trust	2.3
ugly	-2.3
unavailable	-1.2
uncertain	-1.2
unclean	-1.6
uncomfortable	-1.6
unfortunately	-1.5
unfriendly	-1.5
unhappy	-1.8
unpleasant	-2.1
unreliable	-1.5
unsafe	-1.8
unsure	-1.0
upset	-1.6
useful	1.9
useless	-1.8
value	1.2
vibrant	1.9
warm	0.9
waste	-1.8
wasted	-2.2
weird	-0.7
welcoming	2.1
win	2.8
winner	2.8
wonderful	2.7
worried	-1.2
worry	-1.9
worse	-2.1
worst	-3.1
worth	0.9
worthless	-1.9
worthwhile	1.6
wow	2.8
wrong	-2.1
yay	2.4
yes	1.7
)FGDM";

// data/emotion_lexicon.tsv
inline constexpr std::string_view kEmotionLexicon = R"FGDM(# token<TAB>emotion, emotion one of happy|angry|surprise|sad|fear
afraid	fear
amazed	surprise
amazing	happy
angry	angry
annoyance	angry
annoyed	angry
annoying	angry
anxious	fear
astonished	surprise
astounded	surprise
awesome	happy
awful	angry
beautiful	happy
blessed	happy
bored	sad
boring	sad
cheerful	happy
comfortable	happy
concern	fear
concerned	fear
content	happy
cozy	happy
cry	sad
curious	surprise
danger	fear
dangerous	fear
delighted	happy
depressed	sad
depressing	sad
disappointed	sad
disappointing	sad
disappointment	sad
disgusting	angry
doubt	fear
doubtful	fear
dread	fear
dream	happy
dull	sad
ecstatic	happy
enjoy	happy
enjoyed	happy
excellent	happy
excited	happy
exciting	happy
fantastic	happy
favorite	happy
fear	fear
frightened	fear
frustrated	angry
frustrating	angry
fun	happy
furious	angry
furiously	angry
glad	happy
gloomy	sad
glorious	happy
good	happy
grateful	happy
great	happy
grief	sad
happy	happy
hate	angry
hated	angry
heartbroken	sad
hopeless	sad
horror	fear
hostile	angry
incredible	surprise
insecure	fear
insult	angry
irritated	angry
irritating	angry
joy	happy
joyful	happy
laugh	happy
livid	angry
lonely	sad
lost	sad
love	happy
loved	happy
lovely	happy
mad	angry
miserable	sad
miss	sad
nasty	angry
nervous	fear
nice	happy
offended	angry
omg	surprise
outrage	angry
outraged	angry
overpriced	angry
panic	fear
paradise	happy
perfect	happy
pleased	happy
proud	happy
rage	angry
really	surprise
regret	sad
relax	happy
relaxing	happy
ridiculous	angry
ripoff	angry
risk	fear
risky	fear
rude	angry
sad	sad
sadly	sad
scam	angry
scared	fear
scary	fear
shabby	sad
shock	surprise
shocked	surprise
smile	happy
smiling	happy
sorrow	sad
sorry	sad
speechless	surprise
startled	surprise
strange	surprise
stunning	surprise
stupid	angry
sudden	surprise
suddenly	surprise
sunny	happy
surprise	surprise
surprised	surprise
surprising	surprise
suspicious	fear
tears	sad
terrible	angry
terrified	fear
threat	fear
thrilled	happy
tired	sad
unbelievable	surprise
uncertain	fear
unexpected	surprise
unexpectedly	surprise
unfair	angry
unfortunately	sad
unhappy	sad
unsafe	fear
unsure	fear
upset	sad
weird	surprise
whoa	surprise
wonder	surprise
wonderful	happy
worried	fear
worry	fear
worst	angry
wow	surprise
yay	happy
)FGDM";

}  // namespace fgdm::resources
