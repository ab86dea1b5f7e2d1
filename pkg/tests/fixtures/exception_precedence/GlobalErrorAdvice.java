package com.demo.vault;

import org.springframework.http.HttpStatus;
import org.springframework.web.bind.annotation.ControllerAdvice;
import org.springframework.web.bind.annotation.ExceptionHandler;
import org.springframework.web.bind.annotation.ResponseStatus;

@ControllerAdvice
public class GlobalErrorAdvice {

    @ExceptionHandler(VaultLockedException.class)
    @ResponseStatus(HttpStatus.BAD_REQUEST)
    public void locked() {
    }

    @ExceptionHandler(AccessDeniedException.class)
    @ResponseStatus(HttpStatus.FORBIDDEN)
    public void denied() {
    }
}
