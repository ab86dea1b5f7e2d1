package com.demo.results;

public class BaseResult {
    private long sequence;
    private String label;
    private int outcome;
    private String padding;
}
