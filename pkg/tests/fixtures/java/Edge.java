package fixtures;

public class Edge {
    /* block comment with a fake header: int bogus(int x) { */
    static String greet(String name) {
        String msg = "hello world" + name;
        return msg + "!{not a brace}";
    }

    // line comment } with stray brace
    static char pick() {
        char c = 'x';
        return c;
    }

    static int weird() {
        String s = "a + b = c; // not code";
        return s.length() + 0x1F + 1_000;
    }
}
